// Client-side mirror of the server validation rules. Forms run these before
// submitting, so a payload that fails here never produces a network call;
// field paths match the server's so inline errors land on the same inputs.

import type { PersonalInfo, ProfessionalInfo, Violation } from "./api.js";

export const NAME_MAX = 100;
export const HEADLINE_MAX = 200;
export const SPECIALITY_MAX = 60;
export const SUMMARY_MAX = 5000;
export const TITLE_MAX = 200;
export const RESPONSIBILITY_MAX = 200;
export const SNIPPET_BODY_MAX = 65536;
export const PASSWORD_MIN = 8;

export function isMailbox(text: string): boolean {
  const parts = text.split("@");
  return parts.length === 2 && parts[0]!.length > 0 && parts[1]!.length > 0;
}

function checkName(violations: Violation[], path: string, value: string): void {
  const trimmed = value.trim();
  if (trimmed.length === 0) {
    violations.push({ field_path: path, message: "must not be empty" });
  } else if (trimmed.length > NAME_MAX) {
    violations.push({ field_path: path, message: `must be at most ${NAME_MAX} characters` });
  }
}

function validDate(text: string): Date | null {
  if (!/^\d{4}-\d{2}-\d{2}$/.test(text)) return null;
  const [y, m, d] = text.split("-").map(Number) as [number, number, number];
  const date = new Date(Date.UTC(y, m - 1, d));
  if (date.getUTCFullYear() !== y || date.getUTCMonth() !== m - 1 || date.getUTCDate() !== d) {
    return null;
  }
  return date;
}

const SCHEME = /^[A-Za-z][A-Za-z0-9+.-]*:/;

export function validatePersonal(info: PersonalInfo, today: Date = new Date()): Violation[] {
  const violations: Violation[] = [];
  checkName(violations, "personal.first_name", info.first_name);
  checkName(violations, "personal.last_name", info.last_name);
  if (!isMailbox(info.email)) {
    violations.push({ field_path: "personal.email", message: "must be a mailbox address (local@domain)" });
  }
  if (info.birthday !== null && info.birthday !== "") {
    const parsed = validDate(info.birthday);
    if (parsed === null) {
      violations.push({ field_path: "personal.birthday", message: "must be a valid YYYY-MM-DD date" });
    } else if (parsed.getTime() > today.getTime()) {
      violations.push({ field_path: "personal.birthday", message: "must not be in the future" });
    }
  }
  const seen = new Set<string>();
  info.presence_links.forEach((link, i) => {
    const path = `personal.presence_links[${i}]`;
    if (link.url.length === 0) {
      violations.push({ field_path: `${path}.url`, message: "must not be empty" });
    } else {
      const match = SCHEME.exec(link.url);
      if (match) {
        const scheme = match[0].slice(0, -1).toLowerCase();
        if (scheme !== "http" && scheme !== "https") {
          violations.push({ field_path: `${path}.url`, message: "scheme must be http or https" });
        }
      }
    }
    const folded = link.network_name.toLowerCase();
    if (seen.has(folded)) {
      violations.push({ field_path: path, message: `duplicate link for network "${link.network_name}"` });
    }
    seen.add(folded);
  });
  return violations;
}

function checkKeywords(violations: Violation[], path: string, keywords: string[]): void {
  const seen = new Set<string>();
  keywords.forEach((keyword, i) => {
    if (keyword.trim().length === 0) {
      violations.push({ field_path: `${path}[${i}]`, message: "must not be empty" });
      return;
    }
    if (keyword.length > SPECIALITY_MAX) {
      violations.push({ field_path: `${path}[${i}]`, message: `must be at most ${SPECIALITY_MAX} characters` });
    }
    const folded = keyword.toLowerCase();
    if (seen.has(folded)) {
      violations.push({ field_path: `${path}[${i}]`, message: `duplicate keyword "${keyword}"` });
    }
    seen.add(folded);
  });
}

export function validateProfessional(info: ProfessionalInfo): Violation[] {
  const violations: Violation[] = [];
  if (info.headline.length > HEADLINE_MAX) {
    violations.push({ field_path: "professional.headline", message: `must be at most ${HEADLINE_MAX} characters` });
  }
  if (info.summary.length > SUMMARY_MAX) {
    violations.push({ field_path: "professional.summary", message: `must be at most ${SUMMARY_MAX} characters` });
  }
  checkKeywords(violations, "professional.specialities", info.specialities);
  return violations;
}

export function validateRegistration(
  email: string,
  password: string,
  firstName: string,
  lastName: string,
): Violation[] {
  const violations: Violation[] = [];
  if (!isMailbox(email)) {
    violations.push({ field_path: "email", message: "must be a mailbox address (local@domain)" });
  }
  if (password.length < PASSWORD_MIN) {
    violations.push({ field_path: "password", message: `must be at least ${PASSWORD_MIN} characters` });
  }
  checkName(violations, "first_name", firstName);
  checkName(violations, "last_name", lastName);
  return violations;
}

export function validateProjectForm(title: string, skills: string[], hours: number | null): Violation[] {
  const violations: Violation[] = [];
  if (title.trim().length === 0) {
    violations.push({ field_path: "title", message: "must not be empty" });
  } else if (title.length > TITLE_MAX) {
    violations.push({ field_path: "title", message: `must be at most ${TITLE_MAX} characters` });
  }
  checkKeywords(violations, "skills_required", skills);
  if (hours !== null && hours < 0) {
    violations.push({ field_path: "dedicated_hours", message: "must be >= 0" });
  }
  return violations;
}

export function validateMembershipForm(responsibility: string): Violation[] {
  const violations: Violation[] = [];
  if (responsibility.trim().length === 0) {
    violations.push({ field_path: "responsibility", message: "must not be empty" });
  } else if (responsibility.length > RESPONSIBILITY_MAX) {
    violations.push({
      field_path: "responsibility",
      message: `must be at most ${RESPONSIBILITY_MAX} characters`,
    });
  }
  return violations;
}

export function validateSnippetForm(title: string, body: string): Violation[] {
  const violations: Violation[] = [];
  if (title.trim().length === 0) {
    violations.push({ field_path: "title", message: "must not be empty" });
  }
  if (body.length === 0) {
    violations.push({ field_path: "body", message: "must not be empty" });
  } else if (body.length > SNIPPET_BODY_MAX) {
    violations.push({ field_path: "body", message: `must be at most ${SNIPPET_BODY_MAX} characters` });
  }
  return violations;
}
