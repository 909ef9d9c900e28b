// Browser entry point: hash routing, form wiring, session persistence.
// All logic lives in the imported modules; this file only binds the DOM.

import { ApiClient, ApiError, OfflineError, emptyPersonal, emptyProfessional } from "./api.js";
import type { PersonalInfo, PortfolioView, ProfessionalInfo, ProjectEntry } from "./api.js";
import {
  renderForbiddenNotice,
  renderLoginForm,
  renderNotFound,
  renderOfflineBanner,
  renderPortfolioPage,
  renderProfileEditor,
  renderProjectPage,
  renderRegisterForm,
  renderSearchPage,
  placeViolations,
} from "./render.js";
import {
  clearEdits,
  decideNavigation,
  initialState,
  markEdit,
  parseRoute,
  routeToHash,
  type Route,
  type ViewState,
} from "./state.js";
import {
  validatePersonal,
  validateProfessional,
  validateRegistration,
} from "./validation.js";

const api = new ApiClient("");
let state: ViewState = initialState();
// ProjectEntry cache so the project page can render from portfolio data.
const knownEntries = new Map<string, ProjectEntry>();
let returnAfterLogin: Route | null = null;

const app = document.getElementById("app")!;

// Only the opaque session token is persisted; never credentials.
const TOKEN_KEY = "folionet.token";
const USER_KEY = "folionet.user";

function restoreSession(): void {
  const token = sessionStorage.getItem(TOKEN_KEY);
  const userId = sessionStorage.getItem(USER_KEY);
  if (token && userId) {
    state = { ...state, session: token, sessionUserId: userId };
    api.token = token;
  }
}

function storeSession(token: string | null, userId: string | null): void {
  state = { ...state, session: token, sessionUserId: userId };
  api.token = token;
  if (token && userId) {
    sessionStorage.setItem(TOKEN_KEY, token);
    sessionStorage.setItem(USER_KEY, userId);
  } else {
    sessionStorage.removeItem(TOKEN_KEY);
    sessionStorage.removeItem(USER_KEY);
  }
}

function showOffline(): void {
  app.insertAdjacentHTML("afterbegin", renderOfflineBanner());
}

function formError(message: string): void {
  const slot = app.querySelector('.field-error[data-field-path="_form"]');
  if (slot) slot.textContent = message;
}

async function renderRoute(route: Route): Promise<void> {
  state = { ...state, currentRoute: route };
  if (route.kind === "search") {
    app.innerHTML = renderSearchPage("", null);
    bindSearch();
  } else if (route.kind === "portfolio") {
    try {
      const view = await api.getPortfolio(route.userId);
      for (const entry of view.projects.items) knownEntries.set(entry.project_id, entry);
      app.innerHTML = renderPortfolioPage(view, {
        isOwner: state.sessionUserId === route.userId,
      });
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        app.innerHTML = renderNotFound("This portfolio");
      } else if (error instanceof OfflineError) {
        showOffline();
      } else {
        throw error;
      }
    }
  } else if (route.kind === "portfolio_edit") {
    const view = await api.getPortfolio(state.sessionUserId!);
    app.innerHTML = renderProfileEditor(view);
    bindProfileEditor(view);
  } else if (route.kind === "project") {
    app.innerHTML = renderProjectPage(knownEntries.get(route.projectId) ?? null);
  } else if (route.kind === "login") {
    app.innerHTML = renderLoginForm();
    bindLogin();
  } else {
    app.innerHTML = renderRegisterForm();
    bindRegister();
  }
}

function navigate(target: Route): void {
  const decision = decideNavigation(state, target);
  if (decision.kind === "confirm") {
    if (!window.confirm("Discard unsaved changes?")) return;
    state = clearEdits(state);
  }
  if (decision.kind === "redirect_login") {
    returnAfterLogin = target;
    location.hash = routeToHash({ kind: "login" });
    return;
  }
  location.hash = routeToHash(target);
  if (location.hash === routeToHash(target)) {
    void renderRoute(target);
  }
}

function value(form: HTMLFormElement, name: string): string {
  return (form.elements.namedItem(name) as HTMLInputElement | HTMLTextAreaElement).value;
}

function bindSearch(): void {
  const form = document.getElementById("search-form") as HTMLFormElement;
  form.onsubmit = async (event) => {
    event.preventDefault();
    const keyword = value(form, "q");
    try {
      const results = await api.searchProfiles(keyword);
      app.innerHTML = renderSearchPage(keyword, results);
      bindSearch();
    } catch (error) {
      if (error instanceof OfflineError) showOffline();
      else if (error instanceof ApiError) formError(error.message);
      else throw error;
    }
  };
}

function bindLogin(): void {
  const form = document.getElementById("login-form") as HTMLFormElement;
  form.onsubmit = async (event) => {
    event.preventDefault();
    try {
      const session = await api.login(value(form, "email"), value(form, "password"));
      storeSession(session.token, session.user_id);
      const target = returnAfterLogin ?? { kind: "portfolio", userId: session.user_id };
      returnAfterLogin = null;
      navigate(target);
    } catch (error) {
      if (error instanceof ApiError) formError("Wrong email or password.");
      else if (error instanceof OfflineError) showOffline();
      else throw error;
    }
  };
}

function bindRegister(): void {
  const form = document.getElementById("register-form") as HTMLFormElement;
  form.onsubmit = async (event) => {
    event.preventDefault();
    const email = value(form, "email");
    const password = value(form, "password");
    const first = value(form, "first_name");
    const last = value(form, "last_name");
    const violations = validateRegistration(email, password, first, last);
    if (violations.length > 0) {
      placeViolations(app, violations);
      return;
    }
    try {
      const userId = await api.register(email, password, first, last);
      const session = await api.login(email, password);
      storeSession(session.token, userId);
      navigate({ kind: "portfolio_edit" });
    } catch (error) {
      if (error instanceof ApiError) {
        const unplaced = placeViolations(app, error.violations);
        formError(unplaced.join("; ") || error.message);
      } else if (error instanceof OfflineError) {
        showOffline();
      } else {
        throw error;
      }
    }
  };
}

function parsePresenceLinks(raw: string): PersonalInfo["presence_links"] {
  return raw
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line.length > 0)
    .map((line) => {
      const [network, ...rest] = line.split(/\s+/);
      return { network_name: network ?? "", url: rest.join("") };
    });
}

function bindProfileEditor(view: PortfolioView): void {
  const form = document.getElementById("profile-form") as HTMLFormElement;
  form.oninput = (event) => {
    const target = event.target as HTMLInputElement;
    state = markEdit(state, target.name, target.value);
  };
  form.onsubmit = async (event) => {
    event.preventDefault();
    const personal: PersonalInfo = {
      ...emptyPersonal(),
      first_name: value(form, "first_name"),
      last_name: value(form, "last_name"),
      email: value(form, "email"),
      country: value(form, "country"),
      city: value(form, "city"),
      birthday: value(form, "birthday") || null,
      website_url: value(form, "website_url") || null,
      presence_links: parsePresenceLinks(value(form, "presence_links")),
    };
    const professional: ProfessionalInfo = {
      ...emptyProfessional(),
      headline: value(form, "headline"),
      specialities: value(form, "specialities")
        .split(",")
        .map((s) => s.trim())
        .filter((s) => s.length > 0),
      summary: value(form, "summary"),
    };
    const violations = [...validatePersonal(personal), ...validateProfessional(professional)];
    if (violations.length > 0) {
      placeViolations(app, violations);
      return;
    }
    try {
      await api.saveProfile(view.user_id, personal, professional);
      state = clearEdits(state);
      navigate({ kind: "portfolio", userId: view.user_id });
    } catch (error) {
      if (error instanceof ApiError && error.status === 422) {
        const unplaced = placeViolations(app, error.violations);
        if (unplaced.length > 0) formError(unplaced.join("; "));
      } else if (error instanceof ApiError && error.status === 401) {
        returnAfterLogin = { kind: "portfolio_edit" };
        navigate({ kind: "login" });
      } else if (error instanceof ApiError && error.status === 403) {
        app.insertAdjacentHTML("afterbegin", renderForbiddenNotice());
      } else if (error instanceof OfflineError) {
        showOffline();
      } else {
        throw error;
      }
    }
  };
}

window.addEventListener("hashchange", () => {
  const target = parseRoute(location.hash);
  const decision = decideNavigation(state, target);
  if (decision.kind === "confirm" && !window.confirm("Discard unsaved changes?")) {
    location.hash = routeToHash(state.currentRoute);
    return;
  }
  if (decision.kind === "redirect_login") {
    returnAfterLogin = target;
    location.hash = routeToHash({ kind: "login" });
    return;
  }
  state = clearEdits(state);
  void renderRoute(target);
});

restoreSession();
void renderRoute(parseRoute(location.hash));
