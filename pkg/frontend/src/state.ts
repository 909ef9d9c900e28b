// View state and navigation rules: hash routes, the unsaved-edits guard and
// the session requirement for edit routes.

export type Route =
  | { kind: "search" }
  | { kind: "portfolio"; userId: string }
  | { kind: "portfolio_edit" }
  | { kind: "project"; projectId: string }
  | { kind: "login" }
  | { kind: "register" };

export interface ViewState {
  session: string | null;
  sessionUserId: string | null;
  currentRoute: Route;
  // Unsaved form deltas keyed by field; non-empty means "dirty".
  pendingEdits: Record<string, unknown>;
}

export function initialState(): ViewState {
  return {
    session: null,
    sessionUserId: null,
    currentRoute: { kind: "search" },
    pendingEdits: {},
  };
}

export function parseRoute(hash: string): Route {
  const clean = hash.replace(/^#/, "");
  const parts = clean.split("/").filter((p) => p.length > 0);
  if (parts.length === 0 || parts[0] === "search") return { kind: "search" };
  if (parts[0] === "u" && parts[1]) return { kind: "portfolio", userId: parts[1] };
  if (parts[0] === "edit") return { kind: "portfolio_edit" };
  if (parts[0] === "p" && parts[1]) return { kind: "project", projectId: parts[1] };
  if (parts[0] === "login") return { kind: "login" };
  if (parts[0] === "register") return { kind: "register" };
  return { kind: "search" };
}

export function routeToHash(route: Route): string {
  switch (route.kind) {
    case "search":
      return "#/search";
    case "portfolio":
      return `#/u/${route.userId}`;
    case "portfolio_edit":
      return "#/edit";
    case "project":
      return `#/p/${route.projectId}`;
    case "login":
      return "#/login";
    case "register":
      return "#/register";
  }
}

export function requiresSession(route: Route): boolean {
  return route.kind === "portfolio_edit";
}

export type NavigationDecision =
  | { kind: "proceed" }
  | { kind: "confirm" }
  | { kind: "redirect_login" };

/** Decide what navigating from the current state to ``target`` does.
 *
 * Unsaved edits always prompt first; once clean, edit routes without a live
 * session bounce to the login page (which later returns to the edit route).
 */
export function decideNavigation(state: ViewState, target: Route): NavigationDecision {
  if (Object.keys(state.pendingEdits).length > 0) {
    return { kind: "confirm" };
  }
  if (requiresSession(target) && state.session === null) {
    return { kind: "redirect_login" };
  }
  return { kind: "proceed" };
}

export function markEdit(state: ViewState, field: string, value: unknown): ViewState {
  return { ...state, pendingEdits: { ...state.pendingEdits, [field]: value } };
}

export function clearEdits(state: ViewState): ViewState {
  return { ...state, pendingEdits: {} };
}
