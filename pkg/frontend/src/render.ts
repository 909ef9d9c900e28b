// HTML renderers for every page. Pure string builders so they are testable
// without a browser; main.ts mounts the output and binds events.

import type { PageOf, PortfolioView, ProfileSummary, Violation } from "./api.js";
import { escapeHtml, highlight } from "./highlight.js";

function field(label: string, value: string | null): string {
  if (value === null || value === "") return "";
  return `<tr><th scope="row">${escapeHtml(label)}</th><td>${escapeHtml(value)}</td></tr>`;
}

function linkRow(label: string, url: string): string {
  const href = /^https?:/i.test(url) ? url : `http://${url}`;
  return `<tr><th scope="row">${escapeHtml(label)}</th><td><a href="${escapeHtml(href)}" rel="noopener">${escapeHtml(url)}</a></td></tr>`;
}

/** The owner-only administration menu shown above their own portfolio. */
export function renderOperationsMenu(): string {
  return `
  <nav class="operations" aria-label="Operations">
    <h2>Operations</h2>
    <ul>
      <li><a href="#/search" data-op="list">List User</a></li>
      <li><a href="#/register" data-op="create">Create User</a></li>
      <li><a href="#/edit" data-op="update">Update User</a></li>
    </ul>
  </nav>`;
}

export function renderPortfolioPage(view: PortfolioView, options: { isOwner: boolean }): string {
  const p = view.personal;
  const q = view.professional;
  const name = `${p.first_name} ${p.last_name}`;

  const presenceRows = view.presence
    .map((link) => linkRow(`${link.network_name} Url`, link.url))
    .join("");

  const projectRows = view.projects.items
    .map(
      (entry) => `
      <tr>
        <td><a href="#/p/${escapeHtml(entry.project_id)}" class="project-link">${escapeHtml(entry.project_title)}</a></td>
        <td>${escapeHtml(entry.responsibility)}</td>
        <td>${escapeHtml(entry.task_description)}</td>
      </tr>`,
    )
    .join("");

  const projectsBody = view.projects.total
    ? `
    <p class="pagination-display">${escapeHtml(view.projects.display)}</p>
    <table class="projects">
      <thead>
        <tr><th>Project</th><th>Responsibility</th><th>Description of the tasks</th></tr>
      </thead>
      <tbody>${projectRows}</tbody>
    </table>`
    : `
    <p class="pagination-display">${escapeHtml(view.projects.display)}</p>
    <p class="empty-state">No projects yet.${options.isOwner ? " Add yourself to a project to show your work." : ""}</p>`;

  const snippetBlocks = view.snippets
    .map(
      (snippet) => `
    <article class="snippet">
      <h3>${escapeHtml(snippet.title)}${
        snippet.language_tag ? ` <span class="language-tag">${escapeHtml(snippet.language_tag)}</span>` : ""
      }</h3>
      <pre class="code"><code>${highlight(snippet.body, snippet.language_tag)}</code></pre>
    </article>`,
    )
    .join("");

  const snippetsBody = view.snippets.length
    ? snippetBlocks
    : `<p class="empty-state">No code snippets yet.${options.isOwner ? " Add one to show your skills directly." : ""}</p>`;

  return `
<article class="portfolio">
  <h1>${escapeHtml(name)} Portfolio</h1>
  ${options.isOwner ? renderOperationsMenu() : ""}
  <section class="personal-info">
    <h2>Personal Information</h2>
    <table>
      ${field("First Name", p.first_name)}
      ${field("Last Name", p.last_name)}
      ${field("Email", p.email)}
      ${field("Country", p.country)}
      ${field("City", p.city)}
      ${field("Birthday", p.birthday)}
      ${p.website_url ? linkRow("Website", p.website_url) : ""}
      ${presenceRows}
    </table>
  </section>
  <section class="professional-info">
    <h2>Professional Information</h2>
    <table>
      ${field("Headline", q.headline)}
      ${field("Specialities", q.specialities.join(", "))}
      ${field("Summary", q.summary)}
    </table>
  </section>
  <section class="projects-section">
    <h2>Projects and responsibilities ${escapeHtml(p.first_name)}</h2>
    ${projectsBody}
  </section>
  <section class="snippets-section">
    <h2>Code snippets</h2>
    ${snippetsBody}
  </section>
</article>`;
}

export function renderSearchPage(keyword: string, results: PageOf<ProfileSummary> | null): string {
  let body = "";
  if (results !== null) {
    const cards = results.items
      .map(
        (item) => `
      <li class="result-card">
        <a href="#/u/${escapeHtml(item.user_id)}">
          <strong class="result-name">${escapeHtml(item.name)}</strong>
          <span class="result-headline">${escapeHtml(item.headline)}</span>
          <span class="result-specialities">${item.specialities
            .slice(0, 3)
            .map((s) => `<span class="chip">${escapeHtml(s)}</span>`)
            .join(" ")}</span>
        </a>
      </li>`,
      )
      .join("");
    body = results.total
      ? `
      <p class="pagination-display">${escapeHtml(results.display)}</p>
      <ul class="results">${cards}</ul>`
      : `<p class="empty-state">No profiles match "${escapeHtml(keyword)}".</p>`;
  }
  return `
<section class="search">
  <h1>Find candidates</h1>
  <form id="search-form">
    <input type="search" name="q" placeholder="Skill, name or headline" value="${escapeHtml(keyword)}" />
    <button type="submit">Search</button>
  </form>
  ${body}
</section>`;
}

export function renderProjectPage(entry: { project_title: string; responsibility: string; task_description: string } | null): string {
  if (entry === null) {
    return `<section class="project-page"><h1>Project</h1><p class="empty-state">Open a project from a portfolio to see its details.</p></section>`;
  }
  return `
<section class="project-page">
  <h1>${escapeHtml(entry.project_title)}</h1>
  <table>
    <tr><th scope="row">Responsibility</th><td>${escapeHtml(entry.responsibility)}</td></tr>
    <tr><th scope="row">Description of the tasks</th><td>${escapeHtml(entry.task_description)}</td></tr>
  </table>
</section>`;
}

export function renderNotFound(what: string): string {
  return `<section class="not-found"><h1>Not found</h1><p>${escapeHtml(what)} does not exist.</p><p><a href="#/search">Back to search</a></p></section>`;
}

export function renderOfflineBanner(): string {
  return `<div class="offline-banner" role="alert">Server unreachable. Check your connection and retry.</div>`;
}

export function renderForbiddenNotice(): string {
  return `<div class="forbidden-notice" role="alert">You can only edit resources you own.</div>`;
}

// -- forms -------------------------------------------------------------------

function inputRow(
  label: string,
  name: string,
  fieldPath: string,
  value = "",
  type = "text",
): string {
  return `
    <label>${escapeHtml(label)}
      <input type="${type}" name="${escapeHtml(name)}" value="${escapeHtml(value)}" />
      <span class="field-error" data-field-path="${escapeHtml(fieldPath)}"></span>
    </label>`;
}

export function renderLoginForm(): string {
  return `
<section class="login">
  <h1>Sign in</h1>
  <form id="login-form">
    ${inputRow("Email", "email", "email")}
    ${inputRow("Password", "password", "password", "", "password")}
    <span class="field-error" data-field-path="_form"></span>
    <button type="submit">Sign in</button>
  </form>
  <p>New here? <a href="#/register">Create an account</a>.</p>
</section>`;
}

export function renderRegisterForm(): string {
  return `
<section class="register">
  <h1>Create your account</h1>
  <form id="register-form">
    ${inputRow("First name", "first_name", "first_name")}
    ${inputRow("Last name", "last_name", "last_name")}
    ${inputRow("Email", "email", "email")}
    ${inputRow("Password", "password", "password", "", "password")}
    <span class="field-error" data-field-path="_form"></span>
    <button type="submit">Register</button>
  </form>
</section>`;
}

export function renderProfileEditor(view: PortfolioView): string {
  const p = view.personal;
  const q = view.professional;
  const links = p.presence_links
    .map((l) => `${l.network_name} ${l.url}`)
    .join("\n");
  return `
<section class="profile-editor">
  <h1>Edit profile</h1>
  <form id="profile-form">
    <fieldset>
      <legend>Personal Information</legend>
      ${inputRow("First name", "first_name", "personal.first_name", p.first_name)}
      ${inputRow("Last name", "last_name", "personal.last_name", p.last_name)}
      ${inputRow("Email", "email", "personal.email", p.email)}
      ${inputRow("Country", "country", "personal.country", p.country)}
      ${inputRow("City", "city", "personal.city", p.city)}
      ${inputRow("Birthday (YYYY-MM-DD)", "birthday", "personal.birthday", p.birthday ?? "")}
      ${inputRow("Website", "website_url", "personal.website_url", p.website_url ?? "")}
      <label>Presence links (one per line: network url)
        <textarea name="presence_links">${escapeHtml(links)}</textarea>
        <span class="field-error" data-field-path="personal.presence_links"></span>
      </label>
    </fieldset>
    <fieldset>
      <legend>Professional Information</legend>
      ${inputRow("Headline", "headline", "professional.headline", q.headline)}
      ${inputRow("Specialities (comma separated)", "specialities", "professional.specialities", q.specialities.join(", "))}
      <label>Summary
        <textarea name="summary">${escapeHtml(q.summary)}</textarea>
        <span class="field-error" data-field-path="professional.summary"></span>
      </label>
    </fieldset>
    <span class="field-error" data-field-path="_form"></span>
    <button type="submit">Save profile</button>
  </form>
</section>`;
}

/** Place server/client violations at their named fields; returns the paths
 * that found no matching slot (callers show those on the form-level line). */
export function placeViolations(root: ParentNode, violations: Violation[]): string[] {
  const unplaced: string[] = [];
  for (const violation of violations) {
    const slot = root.querySelector(
      `.field-error[data-field-path="${violation.field_path}"]`,
    );
    if (slot) {
      slot.textContent = violation.message;
    } else {
      unplaced.push(`${violation.field_path}: ${violation.message}`);
    }
  }
  return unplaced;
}
