"""Domain types, validation rules, and pagination.

Pure logic: nothing in this module touches storage, sessions or the network.
Validators never raise on bad input; they return a :class:`ValidationReport`
listing every violated rule with its field path. Parsing from wire documents
lives in the HTTP layer, not here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import date

from .errors import InvalidPage

# Chosen bounds; they exist so every rule has a testable edge.
NAME_MAX = 100
HEADLINE_MAX = 200
SPECIALITY_MAX = 60
SUMMARY_MAX = 5000
TITLE_MAX = 200
RESPONSIBILITY_MAX = 200
SNIPPET_BODY_MAX = 65536

DEFAULT_PAGE_SIZE = 10

_SCHEME_RE = re.compile(r"^([A-Za-z][A-Za-z0-9+.\-]*):")


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass
class PresenceLink:
    """A pointer to the user's identity on another network."""

    network_name: str
    url: str


@dataclass
class PersonalInfo:
    """Identity block of a portfolio: names, contact and presence links."""

    first_name: str
    last_name: str
    email: str
    country: str = ""
    city: str = ""
    birthday: str | None = None  # ISO-8601 YYYY-MM-DD
    website_url: str | None = None
    presence_links: list[PresenceLink] = field(default_factory=list)


@dataclass
class ProfessionalInfo:
    """Headline, speciality keywords and free-text summary."""

    headline: str = ""
    specialities: list[str] = field(default_factory=list)
    summary: str = ""


@dataclass
class Project:
    """A unit of collaborative work."""

    id: str
    title: str
    description: str
    skills_required: list[str] = field(default_factory=list)
    people_in_charge: list[str] = field(default_factory=list)
    dedicated_hours: int | None = None
    created_by: str = ""
    created_at: str = ""


@dataclass
class Membership:
    """The user-to-project edge carrying a responsibility and task text."""

    id: str
    project_id: str
    user_id: str
    responsibility: str
    task_description: str = ""
    created_at: str = ""


@dataclass
class CodeSnippet:
    """Titled, language-tagged source text shown as evidence of skill.

    The body is stored and returned byte-exact: no trimming, no normalization,
    and validation never inspects its characters.
    """

    id: str
    owner_id: str
    title: str
    body: str
    language_tag: str | None = None
    created_at: str = ""


@dataclass
class ValidationReport:
    """Outcome of a validator: ``valid`` is true iff ``violations`` is empty."""

    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, field_path: str, message: str) -> None:
        self.violations.append((field_path, message))

    def prefixed(self, prefix: str) -> "ValidationReport":
        """Return a copy with every field path nested under ``prefix``."""
        return ValidationReport([(f"{prefix}.{p}", m) for p, m in self.violations])

    def merged(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.violations + other.violations)


@dataclass
class Page:
    """One slice of an ordered listing, with the rendered display line.

    The display string is part of the contract and is shown verbatim by
    clients, so it is built here and nowhere else.
    """

    items: list
    page_number: int
    page_size: int
    total_count: int
    display: str

    def to_dict(self) -> dict:
        return {
            "items": list(self.items),
            "page": self.page_number,
            "page_size": self.page_size,
            "total": self.total_count,
            "display": self.display,
        }


# ---------------------------------------------------------------------------
# Validators
# ---------------------------------------------------------------------------


def is_mailbox(text: str) -> bool:
    """Mailbox form: exactly one "@" with non-empty local and domain parts."""
    if text.count("@") != 1:
        return False
    local, domain = text.split("@")
    return bool(local) and bool(domain)


def _check_name(report: ValidationReport, path: str, value: str) -> None:
    trimmed = value.strip()
    if not trimmed:
        report.add(path, "must not be empty")
    elif len(trimmed) > NAME_MAX:
        report.add(path, f"must be at most {NAME_MAX} characters")


def _parse_iso_date(text: str) -> date | None:
    if not re.fullmatch(r"\d{4}-\d{2}-\d{2}", text):
        return None
    try:
        return date.fromisoformat(text)
    except ValueError:
        return None


def validate_personal_info(
    info: PersonalInfo, today: date | None = None
) -> ValidationReport:
    """Check every personal-info rule; field paths are relative to the block."""
    report = ValidationReport()
    _check_name(report, "first_name", info.first_name)
    _check_name(report, "last_name", info.last_name)
    if not is_mailbox(info.email):
        report.add("email", "must be a mailbox address (local@domain)")
    if info.birthday is not None:
        parsed = _parse_iso_date(info.birthday)
        if parsed is None:
            report.add("birthday", "must be a valid YYYY-MM-DD date")
        elif parsed > (today or date.today()):
            report.add("birthday", "must not be in the future")
    seen_networks: set[str] = set()
    for i, link in enumerate(info.presence_links):
        path = f"presence_links[{i}]"
        if not link.url:
            report.add(f"{path}.url", "must not be empty")
        else:
            scheme = _SCHEME_RE.match(link.url)
            if scheme and scheme.group(1).lower() not in ("http", "https"):
                report.add(f"{path}.url", "scheme must be http or https")
        folded = link.network_name.casefold()
        if folded in seen_networks:
            report.add(path, f"duplicate link for network {link.network_name!r}")
        seen_networks.add(folded)
    return report


def validate_professional_info(info: ProfessionalInfo) -> ValidationReport:
    report = ValidationReport()
    if len(info.headline) > HEADLINE_MAX:
        report.add("headline", f"must be at most {HEADLINE_MAX} characters")
    if len(info.summary) > SUMMARY_MAX:
        report.add("summary", f"must be at most {SUMMARY_MAX} characters")
    _check_keywords(report, "specialities", info.specialities, SPECIALITY_MAX)
    return report


def _check_keywords(
    report: ValidationReport, path: str, keywords: list[str], max_len: int
) -> None:
    seen: set[str] = set()
    for i, keyword in enumerate(keywords):
        if not keyword.strip():
            report.add(f"{path}[{i}]", "must not be empty")
            continue
        if len(keyword) > max_len:
            report.add(f"{path}[{i}]", f"must be at most {max_len} characters")
        folded = keyword.casefold()
        if folded in seen:
            report.add(f"{path}[{i}]", f"duplicate keyword {keyword!r}")
        seen.add(folded)


def validate_project(p: Project) -> ValidationReport:
    report = ValidationReport()
    if not p.title.strip():
        report.add("title", "must not be empty")
    elif len(p.title) > TITLE_MAX:
        report.add("title", f"must be at most {TITLE_MAX} characters")
    _check_keywords(report, "skills_required", p.skills_required, SPECIALITY_MAX)
    if not p.people_in_charge:
        report.add("people_in_charge", "must not be empty")
    if p.dedicated_hours is not None and p.dedicated_hours < 0:
        report.add("dedicated_hours", "must be >= 0")
    return report


def validate_membership(m: Membership) -> ValidationReport:
    """Responsibility bounds only; referential checks belong to the service."""
    report = ValidationReport()
    if not m.responsibility.strip():
        report.add("responsibility", "must not be empty")
    elif len(m.responsibility) > RESPONSIBILITY_MAX:
        report.add(
            "responsibility", f"must be at most {RESPONSIBILITY_MAX} characters"
        )
    return report


def validate_snippet(s: CodeSnippet) -> ValidationReport:
    """Bounds on title and body length; the body content itself is never
    inspected or rejected, whatever bytes it holds."""
    report = ValidationReport()
    if not s.title.strip():
        report.add("title", "must not be empty")
    if len(s.body) < 1:
        report.add("body", "must not be empty")
    elif len(s.body) > SNIPPET_BODY_MAX:
        report.add("body", f"must be at most {SNIPPET_BODY_MAX} characters")
    return report


# ---------------------------------------------------------------------------
# Pagination
# ---------------------------------------------------------------------------


def render_display(
    page_number: int, page_size: int, item_count: int, total_count: int
) -> str:
    """Render the pagination line exactly as clients must show it."""
    if item_count == 0:
        return f"Displaying 0-0 of {total_count} result(s)."
    first = (page_number - 1) * page_size + 1
    last = first + item_count - 1
    return f"Displaying {first}-{last} of {total_count} result(s)."


def paginate(items: list, page_number: int, page_size: int) -> Page:
    """Return the ``page_number``-th slice of ``items`` (1-indexed).

    Raises InvalidPage when page_number or page_size is below 1. A page past
    the end is legal and comes back empty.
    """
    if page_number < 1 or page_size < 1:
        raise InvalidPage("page_number and page_size must be >= 1")
    start = (page_number - 1) * page_size
    slice_ = list(items[start : start + page_size])
    return Page(
        items=slice_,
        page_number=page_number,
        page_size=page_size,
        total_count=len(items),
        display=render_display(page_number, page_size, len(slice_), len(items)),
    )


# ---------------------------------------------------------------------------
# Record conversion (storage uses plain JSON-shaped dicts)
# ---------------------------------------------------------------------------


def personal_info_to_dict(info: PersonalInfo) -> dict:
    return {
        "first_name": info.first_name,
        "last_name": info.last_name,
        "email": info.email,
        "country": info.country,
        "city": info.city,
        "birthday": info.birthday,
        "website_url": info.website_url,
        "presence_links": [
            {"network_name": l.network_name, "url": l.url}
            for l in info.presence_links
        ],
    }


def personal_info_from_dict(data: dict) -> PersonalInfo:
    return PersonalInfo(
        first_name=data["first_name"],
        last_name=data["last_name"],
        email=data["email"],
        country=data.get("country", ""),
        city=data.get("city", ""),
        birthday=data.get("birthday"),
        website_url=data.get("website_url"),
        presence_links=[
            PresenceLink(network_name=l["network_name"], url=l["url"])
            for l in data.get("presence_links", [])
        ],
    )


def professional_info_to_dict(info: ProfessionalInfo) -> dict:
    return {
        "headline": info.headline,
        "specialities": list(info.specialities),
        "summary": info.summary,
    }


def professional_info_from_dict(data: dict) -> ProfessionalInfo:
    return ProfessionalInfo(
        headline=data.get("headline", ""),
        specialities=list(data.get("specialities", [])),
        summary=data.get("summary", ""),
    )
