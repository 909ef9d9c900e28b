"""Portfolio business logic tying validation, accounts and storage together.

Every mutating operation takes an ``actor``: the user id resolved from a
session by the HTTP layer, or None when no valid token was presented.
Authorization is ownership based: users edit their own profile and snippets,
people in charge edit their projects and memberships, and members may edit
or remove their own membership. Reads (portfolio assembly, co-workers,
search) are public and need no actor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DuplicateEmail,
    DuplicateKey,
    DuplicateMembership,
    EmptyKeyword,
    Forbidden,
    IntegrityViolation,
    Malformed,
    NotFound,
    Unauthenticated,
    ValidationFailed,
)
from .model import (
    DEFAULT_PAGE_SIZE,
    CodeSnippet,
    Membership,
    Page,
    PersonalInfo,
    PresenceLink,
    ProfessionalInfo,
    Project,
    ValidationReport,
    paginate,
    personal_info_from_dict,
    personal_info_to_dict,
    professional_info_from_dict,
    professional_info_to_dict,
    validate_membership,
    validate_personal_info,
    validate_professional_info,
    validate_project,
    validate_snippet,
)
from .storage import Clock, MemoryStore, RecordKey, utc_now

PROJECT_MUTABLE_FIELDS = (
    "title",
    "description",
    "skills_required",
    "people_in_charge",
    "dedicated_hours",
)
MEMBERSHIP_MUTABLE_FIELDS = ("responsibility", "task_description")


@dataclass
class ProjectEntry:
    """One row of the portfolio's projects-and-responsibilities table."""

    project_id: str
    project_title: str
    responsibility: str
    task_description: str

    def to_dict(self) -> dict:
        return {
            "project_id": self.project_id,
            "project_title": self.project_title,
            "responsibility": self.responsibility,
            "task_description": self.task_description,
        }


@dataclass
class PortfolioView:
    """The assembled public portfolio. Carries no credential or session data.

    Snippet summaries include the body: the portfolio is the read path
    through which shown work reaches viewers, byte-exact.
    """

    user_id: str
    personal: PersonalInfo
    professional: ProfessionalInfo
    presence: list[PresenceLink] = field(default_factory=list)
    projects: Page | None = None
    snippets: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        projects = self.projects.to_dict()
        projects["items"] = [entry.to_dict() for entry in self.projects.items]
        return {
            "user_id": self.user_id,
            "personal": personal_info_to_dict(self.personal),
            "professional": professional_info_to_dict(self.professional),
            "presence": [
                {"network_name": l.network_name, "url": l.url} for l in self.presence
            ],
            "projects": projects,
            "snippets": list(self.snippets),
        }


class PortfolioService:
    def __init__(
        self,
        store: MemoryStore,
        *,
        clock: Clock | None = None,
        default_page_size: int = DEFAULT_PAGE_SIZE,
    ):
        self._store = store
        self._clock = clock or utc_now
        self._default_page_size = default_page_size

    # -- profile -------------------------------------------------------------

    def upsert_profile(
        self,
        actor: str | None,
        subject_user: str,
        personal: PersonalInfo,
        professional: ProfessionalInfo,
    ) -> None:
        actor = self._require_actor(actor)
        if actor != subject_user:
            raise Forbidden("only the owner may edit a profile")
        record = self._must_get("user", subject_user)
        report = validate_personal_info(personal, today=self._clock().date())
        report = report.prefixed("personal").merged(
            validate_professional_info(professional).prefixed("professional")
        )
        self._check(report)
        record["personal"] = personal_info_to_dict(personal)
        record["professional"] = professional_info_to_dict(professional)
        try:
            self._store.update(RecordKey("user", subject_user), record)
        except DuplicateKey:
            raise DuplicateEmail(
                f"email {personal.email!r} is already registered"
            ) from None

    # -- projects ------------------------------------------------------------

    def create_project(
        self,
        actor: str | None,
        title: str,
        description: str,
        skills_required: list[str] | None = None,
        dedicated_hours: int | None = None,
    ) -> str:
        actor = self._require_actor(actor)
        project = Project(
            id="",
            title=title,
            description=description,
            skills_required=list(skills_required or []),
            people_in_charge=[actor],
            dedicated_hours=dedicated_hours,
            created_by=actor,
        )
        self._check(validate_project(project))
        try:
            key = self._store.create("project", _project_record(project))
        except IntegrityViolation:
            raise NotFound(f"user {actor} does not exist") from None
        return key.id

    def update_project(
        self, actor: str | None, project_id: str, changes: dict
    ) -> None:
        actor = self._require_actor(actor)
        record = self._must_get("project", project_id)
        if actor not in record["people_in_charge"]:
            raise Forbidden("only people in charge may edit a project")
        _apply_changes(record, changes, PROJECT_MUTABLE_FIELDS)
        project = Project(
            id=record["id"],
            title=record["title"],
            description=record["description"],
            skills_required=record["skills_required"],
            people_in_charge=record["people_in_charge"],
            dedicated_hours=record["dedicated_hours"],
            created_by=record["created_by"],
            created_at=record["created_at"],
        )
        self._check(validate_project(project))
        try:
            self._store.update(RecordKey("project", project_id), record)
        except IntegrityViolation as exc:
            raise NotFound(str(exc)) from None

    # -- memberships -----------------------------------------------------------

    def add_member(
        self,
        actor: str | None,
        project_id: str,
        member_user_id: str,
        responsibility: str,
        task_description: str = "",
    ) -> str:
        actor = self._require_actor(actor)
        project = self._must_get("project", project_id)
        if actor not in project["people_in_charge"]:
            raise Forbidden("only people in charge may add members")
        self._must_get("user", member_user_id)
        membership = Membership(
            id="",
            project_id=project_id,
            user_id=member_user_id,
            responsibility=responsibility,
            task_description=task_description,
        )
        self._check(validate_membership(membership))
        try:
            key = self._store.create(
                "membership",
                {
                    "project_id": project_id,
                    "user_id": member_user_id,
                    "responsibility": responsibility,
                    "task_description": task_description,
                },
            )
        except DuplicateKey:
            raise DuplicateMembership(
                f"user {member_user_id} is already a member of {project_id}"
            ) from None
        return key.id

    def update_membership(
        self, actor: str | None, membership_id: str, changes: dict
    ) -> None:
        actor = self._require_actor(actor)
        record = self._must_get("membership", membership_id)
        self._check_membership_access(actor, record)
        _apply_changes(record, changes, MEMBERSHIP_MUTABLE_FIELDS)
        membership = Membership(
            id=record["id"],
            project_id=record["project_id"],
            user_id=record["user_id"],
            responsibility=record["responsibility"],
            task_description=record["task_description"],
        )
        self._check(validate_membership(membership))
        self._store.update(RecordKey("membership", membership_id), record)

    def remove_member(self, actor: str | None, membership_id: str) -> None:
        actor = self._require_actor(actor)
        record = self._must_get("membership", membership_id)
        self._check_membership_access(actor, record)
        self._store.delete(RecordKey("membership", membership_id))

    # -- snippets --------------------------------------------------------------

    def add_snippet(
        self,
        actor: str | None,
        title: str,
        body: str,
        language_tag: str | None = None,
    ) -> str:
        actor = self._require_actor(actor)
        snippet = CodeSnippet(
            id="", owner_id=actor, title=title, body=body, language_tag=language_tag
        )
        self._check(validate_snippet(snippet))
        try:
            key = self._store.create(
                "snippet",
                {
                    "owner_id": actor,
                    "title": title,
                    "language_tag": language_tag,
                    "body": body,
                },
            )
        except IntegrityViolation:
            raise NotFound(f"user {actor} does not exist") from None
        return key.id

    def delete_snippet(self, actor: str | None, snippet_id: str) -> None:
        actor = self._require_actor(actor)
        record = self._must_get("snippet", snippet_id)
        if record["owner_id"] != actor:
            raise Forbidden("only the owner may delete a snippet")
        self._store.delete(RecordKey("snippet", snippet_id))

    # -- reads (public) ----------------------------------------------------------

    def assemble_portfolio(
        self,
        subject_user: str,
        page_number: int = 1,
        page_size: int | None = None,
    ) -> PortfolioView:
        """Join the subject's profile, project memberships and snippets.

        Publicly callable: viewers need no account. Project entries come in
        membership creation order; snippets newest first.
        """
        user = self._must_get("user", subject_user)
        entries = []
        for membership in self._store.scan("membership"):
            if membership["user_id"] != subject_user:
                continue
            project = self._store.get(RecordKey("project", membership["project_id"]))
            entries.append(
                ProjectEntry(
                    project_id=membership["project_id"],
                    project_title=project["title"],
                    responsibility=membership["responsibility"],
                    task_description=membership["task_description"],
                )
            )
        if page_size is None:
            page_size = self._default_page_size
        page = paginate(entries, page_number, page_size)
        snippets = [
            {
                "id": s["id"],
                "title": s["title"],
                "language_tag": s["language_tag"],
                "body": s["body"],
                "created_at": s["created_at"],
            }
            for s in reversed(self._store.scan("snippet"))
            if s["owner_id"] == subject_user
        ]
        personal = personal_info_from_dict(user["personal"])
        return PortfolioView(
            user_id=subject_user,
            personal=personal,
            professional=professional_info_from_dict(user["professional"]),
            presence=list(personal.presence_links),
            projects=page,
            snippets=snippets,
        )

    def coworkers(self, subject_user: str) -> list[str]:
        """Users sharing at least one project membership with the subject."""
        self._must_get("user", subject_user)
        memberships = self._store.scan("membership")
        shared_projects = {
            m["project_id"] for m in memberships if m["user_id"] == subject_user
        }
        others = {
            m["user_id"]
            for m in memberships
            if m["project_id"] in shared_projects and m["user_id"] != subject_user
        }
        return sorted(others)

    def search_profiles(
        self,
        keyword: str,
        page_number: int = 1,
        page_size: int | None = None,
    ) -> Page:
        """Case-insensitive substring match over names, headline, specialities."""
        needle = keyword.strip().casefold()
        if not needle:
            raise EmptyKeyword("search keyword must not be empty")
        summaries = []
        for user in self._store.scan("user"):
            personal, professional = user["personal"], user["professional"]
            name = f"{personal['first_name']} {personal['last_name']}"
            haystacks = [name, professional["headline"], *professional["specialities"]]
            if any(needle in h.casefold() for h in haystacks):
                summaries.append(
                    {
                        "user_id": user["id"],
                        "name": name,
                        "headline": professional["headline"],
                        "specialities": list(professional["specialities"]),
                    }
                )
        if page_size is None:
            page_size = self._default_page_size
        return paginate(summaries, page_number, page_size)

    # -- internals ---------------------------------------------------------------

    def _require_actor(self, actor: str | None) -> str:
        if actor is None:
            raise Unauthenticated("this operation requires a session")
        return actor

    def _must_get(self, kind: str, record_id: str) -> dict:
        record = self._store.get(RecordKey(kind, record_id))
        if record is None:
            raise NotFound(f"{kind} {record_id} does not exist")
        return record

    def _check_membership_access(self, actor: str, membership: dict) -> None:
        if actor == membership["user_id"]:
            return
        project = self._store.get(RecordKey("project", membership["project_id"]))
        if project is None or actor not in project["people_in_charge"]:
            raise Forbidden("not a person in charge nor the member")

    def _check(self, report: ValidationReport) -> None:
        if not report.valid:
            raise ValidationFailed("validation failed", violations=report.violations)


def _project_record(project: Project) -> dict:
    return {
        "title": project.title,
        "description": project.description,
        "skills_required": list(project.skills_required),
        "people_in_charge": list(project.people_in_charge),
        "dedicated_hours": project.dedicated_hours,
        "created_by": project.created_by,
    }


def _apply_changes(record: dict, changes: dict, allowed: tuple[str, ...]) -> None:
    for key in changes:
        if key not in allowed:
            raise Malformed(f"field {key!r} cannot be updated")
    record.update({k: changes[k] for k in changes})
