import { describe, expect, it } from "vitest";

import type { PortfolioView } from "../src/api.js";
import { escapeHtml, highlight } from "../src/highlight.js";
import {
  renderNotFound,
  renderPortfolioPage,
  renderProjectPage,
  renderSearchPage,
} from "../src/render.js";

function demoView(): PortfolioView {
  return {
    user_id: "user-00000001",
    personal: {
      first_name: "Josep",
      last_name: "Colom",
      email: "josep@josep.com",
      country: "Austria",
      city: "Viena",
      birthday: "1984-06-04",
      website_url: "www.josepcolom.com",
      presence_links: [
        { network_name: "Twitter", url: "http://www.twitter.com/josepcolom" },
        { network_name: "LinkedIn", url: "http://www.linkedin.com/in/josepcolom" },
      ],
    },
    professional: {
      headline: "Telecommunications and software engineer",
      specialities: ["Video Coding", "LTE", "Mobile communications", "Networks", "Management"],
      summary: "Telecommunications Engineer with expertise in video coding.",
    },
    presence: [
      { network_name: "Twitter", url: "http://www.twitter.com/josepcolom" },
      { network_name: "LinkedIn", url: "http://www.linkedin.com/in/josepcolom" },
    ],
    projects: {
      items: [
        {
          project_id: "project-00000001",
          project_title: "Firefox Web Browser",
          responsibility: "Programming contributor",
          task_description:
            "My task in the Mozilla foundation is to help to the developer team to find bugs and give advice.",
        },
      ],
      page: 1,
      page_size: 10,
      total: 1,
      display: "Displaying 1-1 of 1 result(s).",
    },
    snippets: [
      {
        id: "snippet-00000001",
        title: "H.264 macroblock loop",
        language_tag: "c",
        body: "for (int i = 0; i < count; i++) { /* walk */ }\n",
        created_at: "2026-01-01T00:00:00+00:00",
      },
    ],
  };
}

describe("portfolio page", () => {
  it("renders every section in order", () => {
    const html = renderPortfolioPage(demoView(), { isOwner: true });
    const order = [
      "Josep Colom Portfolio",
      "Operations",
      "Personal Information",
      "Professional Information",
      "Projects and responsibilities Josep",
      "Code snippets",
    ];
    let cursor = -1;
    for (const marker of order) {
      const at = html.indexOf(marker);
      expect(at, `missing or out of order: ${marker}`).toBeGreaterThan(cursor);
      cursor = at;
    }
  });

  it("shows the projects table with the documented columns", () => {
    const html = renderPortfolioPage(demoView(), { isOwner: false });
    for (const column of ["Project", "Responsibility", "Description of the tasks"]) {
      expect(html).toContain(`<th>${column}</th>`);
    }
    expect(html).toContain("Firefox Web Browser");
    expect(html).toContain("Programming contributor");
  });

  it("shows the server display string verbatim", () => {
    const html = renderPortfolioPage(demoView(), { isOwner: false });
    expect(html).toContain("Displaying 1-1 of 1 result(s).");
  });

  it("renders snippets in a monospace block with the language tag", () => {
    const html = renderPortfolioPage(demoView(), { isOwner: false });
    expect(html).toContain('<pre class="code">');
    expect(html).toContain('<span class="language-tag">c</span>');
    expect(html).toContain("tok-keyword");
  });

  it("hides the operations menu from visitors", () => {
    expect(renderPortfolioPage(demoView(), { isOwner: true })).toContain("Operations");
    expect(renderPortfolioPage(demoView(), { isOwner: false })).not.toContain("Operations");
  });

  it("shows empty states with calls to action for a fresh owner", () => {
    const view = demoView();
    view.projects = { items: [], page: 1, page_size: 10, total: 0, display: "Displaying 0-0 of 0 result(s)." };
    view.snippets = [];
    const html = renderPortfolioPage(view, { isOwner: true });
    expect(html).toContain("Displaying 0-0 of 0 result(s).");
    expect(html).toContain("No projects yet.");
    expect(html).toContain("No code snippets yet.");
  });

  it("escapes user-controlled content", () => {
    const view = demoView();
    view.personal.first_name = '<script>alert("x")</script>';
    view.snippets[0]!.body = "<img src=x onerror=alert(1)>";
    view.snippets[0]!.language_tag = null;
    const html = renderPortfolioPage(view, { isOwner: false });
    expect(html).not.toContain("<script>alert");
    expect(html).not.toContain("<img src=x");
    expect(html).toContain("&lt;script&gt;");
  });
});

describe("search page", () => {
  it("renders result cards with name, headline and top specialities", () => {
    const html = renderSearchPage("LTE", {
      items: [
        {
          user_id: "user-00000001",
          name: "Josep Colom",
          headline: "Telecommunications and software engineer",
          specialities: ["Video Coding", "LTE", "Mobile communications", "Networks"],
        },
      ],
      page: 1,
      page_size: 10,
      total: 1,
      display: "Displaying 1-1 of 1 result(s).",
    });
    expect(html).toContain("Josep Colom");
    expect(html).toContain("Telecommunications and software engineer");
    expect(html).toContain('href="#/u/user-00000001"');
    // Top three specialities only.
    expect(html).toContain("Video Coding");
    expect(html).not.toContain("Networks</span>");
  });

  it("renders an empty state for zero results", () => {
    const html = renderSearchPage("gibberish", {
      items: [],
      page: 1,
      page_size: 10,
      total: 0,
      display: "Displaying 0-0 of 0 result(s).",
    });
    expect(html).toContain("No profiles match");
  });
});

describe("project page and not-found", () => {
  it("renders a known entry", () => {
    const html = renderProjectPage({
      project_title: "Firefox Web Browser",
      responsibility: "Programming contributor",
      task_description: "Find bugs.",
    });
    expect(html).toContain("Firefox Web Browser");
    expect(html).toContain("Responsibility");
  });

  it("renders a not-found page", () => {
    expect(renderNotFound("This portfolio")).toContain("does not exist");
  });
});

describe("highlighter", () => {
  it("marks keywords, strings, comments and numbers for known tags", () => {
    const html = highlight('if (x > 1) { return "done"; } // note', "c");
    expect(html).toContain('<span class="tok-keyword">if</span>');
    expect(html).toContain('<span class="tok-keyword">return</span>');
    expect(html).toContain('<span class="tok-string">&quot;done&quot;</span>');
    expect(html).toContain('<span class="tok-comment">// note</span>');
    expect(html).toContain('<span class="tok-number">1</span>');
  });

  it("falls back to escaped plain text for unknown tags", () => {
    const body = "SELECT * FROM users; <tag>";
    expect(highlight(body, "sql-esoteric")).toBe(escapeHtml(body));
    expect(highlight(body, null)).toBe(escapeHtml(body));
  });

  it("escapes html inside highlighted code", () => {
    const html = highlight('return "<b>bold</b>";', "javascript");
    expect(html).not.toContain("<b>");
    expect(html).toContain("&lt;b&gt;");
  });
});
