// Typed client for the /v1 JSON API. Every request the UI ever makes goes
// through this module, so the documented route list below is the complete
// network surface.

export interface PresenceLink {
  network_name: string;
  url: string;
}

export interface PersonalInfo {
  first_name: string;
  last_name: string;
  email: string;
  country: string;
  city: string;
  birthday: string | null;
  website_url: string | null;
  presence_links: PresenceLink[];
}

export interface ProfessionalInfo {
  headline: string;
  specialities: string[];
  summary: string;
}

export interface ProjectEntry {
  project_id: string;
  project_title: string;
  responsibility: string;
  task_description: string;
}

export interface PageOf<T> {
  items: T[];
  page: number;
  page_size: number;
  total: number;
  display: string;
}

export interface SnippetView {
  id: string;
  title: string;
  language_tag: string | null;
  body: string;
  created_at: string;
}

export interface PortfolioView {
  user_id: string;
  personal: PersonalInfo;
  professional: ProfessionalInfo;
  presence: PresenceLink[];
  projects: PageOf<ProjectEntry>;
  snippets: SnippetView[];
}

export interface ProfileSummary {
  user_id: string;
  name: string;
  headline: string;
  specialities: string[];
}

export interface SessionInfo {
  token: string;
  user_id: string;
  expires_at: string;
}

export interface Violation {
  field_path: string;
  message: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public violations: Violation[] = [],
  ) {
    super(message);
  }
}

/** Network-level failure (server unreachable), distinct from an API error. */
export class OfflineError extends Error {
  constructor() {
    super("network unreachable");
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  token: string | null = null;

  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(method: string, path: string, body?: unknown): Promise<unknown> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, {
        method,
        headers,
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch {
      throw new OfflineError();
    }
    if (response.status === 204) return null;
    const payload: any = await response.json();
    if (!response.ok) {
      const error = payload?.error ?? {};
      throw new ApiError(
        response.status,
        error.code ?? "internal",
        error.message ?? "request failed",
        error.violations ?? [],
      );
    }
    return payload;
  }

  async register(email: string, password: string, firstName: string, lastName: string): Promise<string> {
    const out: any = await this.request("POST", "/v1/users", {
      email,
      password,
      first_name: firstName,
      last_name: lastName,
    });
    return out.user_id;
  }

  async login(email: string, password: string): Promise<SessionInfo> {
    const out = (await this.request("POST", "/v1/sessions", { email, password })) as SessionInfo;
    this.token = out.token;
    return out;
  }

  async logout(): Promise<void> {
    await this.request("DELETE", "/v1/sessions/current");
    this.token = null;
  }

  getPortfolio(userId: string, page = 1, pageSize?: number): Promise<PortfolioView> {
    const query = pageSize === undefined ? `?page=${page}` : `?page=${page}&page_size=${pageSize}`;
    return this.request("GET", `/v1/users/${encodeURIComponent(userId)}/portfolio${query}`) as Promise<PortfolioView>;
  }

  async saveProfile(userId: string, personal: PersonalInfo, professional: ProfessionalInfo): Promise<void> {
    await this.request("PUT", `/v1/users/${encodeURIComponent(userId)}/profile`, {
      personal,
      professional,
    });
  }

  async createProject(title: string, description: string, skills: string[] = [], hours: number | null = null): Promise<string> {
    const out: any = await this.request("POST", "/v1/projects", {
      title,
      description,
      skills_required: skills,
      dedicated_hours: hours,
    });
    return out.project_id;
  }

  async updateProject(projectId: string, changes: Record<string, unknown>): Promise<void> {
    await this.request("PATCH", `/v1/projects/${encodeURIComponent(projectId)}`, changes);
  }

  async addMember(projectId: string, userId: string, responsibility: string, taskDescription = ""): Promise<string> {
    const out: any = await this.request("POST", `/v1/projects/${encodeURIComponent(projectId)}/members`, {
      user_id: userId,
      responsibility,
      task_description: taskDescription,
    });
    return out.membership_id;
  }

  async updateMembership(membershipId: string, changes: Record<string, unknown>): Promise<void> {
    await this.request("PATCH", `/v1/memberships/${encodeURIComponent(membershipId)}`, changes);
  }

  async removeMembership(membershipId: string): Promise<void> {
    await this.request("DELETE", `/v1/memberships/${encodeURIComponent(membershipId)}`);
  }

  async addSnippet(title: string, body: string, languageTag: string | null = null): Promise<string> {
    const out: any = await this.request("POST", "/v1/snippets", {
      title,
      language_tag: languageTag,
      body,
    });
    return out.snippet_id;
  }

  async deleteSnippet(snippetId: string): Promise<void> {
    await this.request("DELETE", `/v1/snippets/${encodeURIComponent(snippetId)}`);
  }

  async coworkers(userId: string): Promise<string[]> {
    const out: any = await this.request("GET", `/v1/users/${encodeURIComponent(userId)}/coworkers`);
    return out.coworkers;
  }

  searchProfiles(keyword: string, page = 1, pageSize?: number): Promise<PageOf<ProfileSummary>> {
    const query = new URLSearchParams({ q: keyword, page: String(page) });
    if (pageSize !== undefined) query.set("page_size", String(pageSize));
    return this.request("GET", `/v1/search/profiles?${query.toString()}`) as Promise<PageOf<ProfileSummary>>;
  }
}

export function emptyPersonal(): PersonalInfo {
  return {
    first_name: "",
    last_name: "",
    email: "",
    country: "",
    city: "",
    birthday: null,
    website_url: null,
    presence_links: [],
  };
}

export function emptyProfessional(): ProfessionalInfo {
  return { headline: "", specialities: [], summary: "" };
}
