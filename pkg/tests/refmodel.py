"""Independent reference model of the whole service layer.

A deliberately naive re-implementation used as the oracle for random-script
equivalence: plain lists, full rescans, every rule re-derived from the
documented contract rather than shared with the package. Operations return
("ok", value) or ("err", code) outcome tuples, and ``dump()`` renders the
same canonical document the real store produces.
"""

from __future__ import annotations

import hashlib
import json
from datetime import date

KINDS = ("user", "project", "membership", "snippet", "session")


def _display(page_number, page_size, shown, total):
    if shown == 0:
        return f"Displaying 0-0 of {total} result(s)."
    first = (page_number - 1) * page_size + 1
    return f"Displaying {first}-{first + shown - 1} of {total} result(s)."


def _valid_date(text):
    parts = text.split("-")
    if len(parts) != 3 or [len(p) for p in parts] != [4, 2, 2]:
        return None
    try:
        return date(int(parts[0]), int(parts[1]), int(parts[2]))
    except ValueError:
        return None


def _mailbox(text):
    pieces = text.split("@")
    return len(pieces) == 2 and all(pieces)


def _scheme_of(url):
    """Leading URI scheme per the generic syntax, or None."""
    if not url or not (url[0].isascii() and url[0].isalpha()):
        return None
    for i, ch in enumerate(url):
        if ch == ":":
            return url[:i]
        if not (ch.isascii() and (ch.isalnum() or ch in "+.-")):
            return None
    return None


def _personal_ok(p, today):
    if not (1 <= len(p["first_name"].strip()) <= 100):
        return False
    if not (1 <= len(p["last_name"].strip()) <= 100):
        return False
    if not _mailbox(p["email"]):
        return False
    if p["birthday"] is not None:
        parsed = _valid_date(p["birthday"])
        if parsed is None or parsed > today:
            return False
    seen = set()
    for link in p["presence_links"]:
        if not link["url"]:
            return False
        scheme = _scheme_of(link["url"])
        if scheme is not None and scheme.lower() not in ("http", "https"):
            return False
        folded = link["network_name"].casefold()
        if folded in seen:
            return False
        seen.add(folded)
    return True


def _keywords_ok(words, limit=60):
    seen = set()
    for w in words:
        if not w.strip() or len(w) > limit:
            return False
        if w.casefold() in seen:
            return False
        seen.add(w.casefold())
    return True


def _professional_ok(q):
    return (
        len(q["headline"]) <= 200
        and len(q["summary"]) <= 5000
        and _keywords_ok(q["specialities"])
    )


def _project_ok(row):
    return (
        bool(row["title"].strip())
        and len(row["title"]) <= 200
        and _keywords_ok(row["skills_required"])
        and bool(row["people_in_charge"])
        and (row["dedicated_hours"] is None or row["dedicated_hours"] >= 0)
    )


def _membership_ok(row):
    return bool(row["responsibility"].strip()) and len(row["responsibility"]) <= 200


def _snippet_ok(row):
    return bool(row["title"].strip()) and 1 <= len(row["body"]) <= 65536


class RefSystem:
    def __init__(self, clock, salt: bytes, scrypt_n: int):
        self.clock = clock
        self.salt = salt
        self.scrypt_n = scrypt_n
        self.rows = {k: [] for k in KINDS}
        self.assigned = {k: 0 for k in KINDS}

    # -- plumbing --

    def _now(self):
        return self.clock().isoformat()

    def _today(self):
        return self.clock().date()

    def _new_id(self, kind):
        self.assigned[kind] += 1
        return f"{kind}-{self.assigned[kind]:08d}"

    def _find(self, kind, row_id):
        for row in self.rows[kind]:
            if row["id"] == row_id:
                return row
        return None

    def _digest(self, password):
        raw = hashlib.scrypt(
            password.encode("utf-8"), salt=self.salt, n=self.scrypt_n, r=8, p=1
        )
        return f"scrypt${self.scrypt_n}$8$1${self.salt.hex()}${raw.hex()}"

    # -- operations --

    def register(self, email, password, first_name, last_name):
        if not _mailbox(email):
            return ("err", "invalid_email")
        if len(password) < 8:
            return ("err", "weak_password")
        personal = {
            "first_name": first_name,
            "last_name": last_name,
            "email": email,
            "country": "",
            "city": "",
            "birthday": None,
            "website_url": None,
            "presence_links": [],
        }
        if not _personal_ok(personal, self._today()):
            return ("err", "validation_failed")
        digest = self._digest(password)
        if any(
            u["personal"]["email"].casefold() == email.casefold()
            for u in self.rows["user"]
        ):
            return ("err", "duplicate_email")
        row = {
            "id": self._new_id("user"),
            "created_at": self._now(),
            "personal": personal,
            "professional": {"headline": "", "specialities": [], "summary": ""},
            "credential": {"password_digest": digest},
        }
        self.rows["user"].append(row)
        return ("ok", row["id"])

    def upsert_profile(self, actor, subject, personal, professional):
        if actor is None:
            return ("err", "unauthenticated")
        if actor != subject:
            return ("err", "forbidden")
        user = self._find("user", subject)
        if user is None:
            return ("err", "not_found")
        if not (_personal_ok(personal, self._today()) and _professional_ok(professional)):
            return ("err", "validation_failed")
        folded = personal["email"].casefold()
        if any(
            u["personal"]["email"].casefold() == folded and u["id"] != subject
            for u in self.rows["user"]
        ):
            return ("err", "duplicate_email")
        user["personal"] = json.loads(json.dumps(personal))
        user["professional"] = json.loads(json.dumps(professional))
        return ("ok", None)

    def create_project(self, actor, title, description, skills, hours):
        if actor is None:
            return ("err", "unauthenticated")
        row = {
            "title": title,
            "description": description,
            "skills_required": list(skills),
            "people_in_charge": [actor],
            "dedicated_hours": hours,
            "created_by": actor,
        }
        if not _project_ok(row):
            return ("err", "validation_failed")
        if self._find("user", actor) is None:
            return ("err", "not_found")
        row["id"] = self._new_id("project")
        row["created_at"] = self._now()
        self.rows["project"].append(row)
        return ("ok", row["id"])

    def update_project(self, actor, project_id, changes):
        if actor is None:
            return ("err", "unauthenticated")
        project = self._find("project", project_id)
        if project is None:
            return ("err", "not_found")
        if actor not in project["people_in_charge"]:
            return ("err", "forbidden")
        candidate = json.loads(json.dumps(project))
        candidate.update(json.loads(json.dumps(changes)))
        if not _project_ok(candidate):
            return ("err", "validation_failed")
        for uid in candidate["people_in_charge"]:
            if self._find("user", uid) is None:
                return ("err", "not_found")
        project.clear()
        project.update(candidate)
        return ("ok", None)

    def add_member(self, actor, project_id, member, responsibility, task):
        if actor is None:
            return ("err", "unauthenticated")
        project = self._find("project", project_id)
        if project is None:
            return ("err", "not_found")
        if actor not in project["people_in_charge"]:
            return ("err", "forbidden")
        if self._find("user", member) is None:
            return ("err", "not_found")
        row = {
            "project_id": project_id,
            "user_id": member,
            "responsibility": responsibility,
            "task_description": task,
        }
        if not _membership_ok(row):
            return ("err", "validation_failed")
        if any(
            m["project_id"] == project_id and m["user_id"] == member
            for m in self.rows["membership"]
        ):
            return ("err", "duplicate_membership")
        row["id"] = self._new_id("membership")
        row["created_at"] = self._now()
        self.rows["membership"].append(row)
        return ("ok", row["id"])

    def _membership_access(self, actor, membership):
        if actor == membership["user_id"]:
            return True
        project = self._find("project", membership["project_id"])
        return project is not None and actor in project["people_in_charge"]

    def update_membership(self, actor, membership_id, changes):
        if actor is None:
            return ("err", "unauthenticated")
        membership = self._find("membership", membership_id)
        if membership is None:
            return ("err", "not_found")
        if not self._membership_access(actor, membership):
            return ("err", "forbidden")
        candidate = json.loads(json.dumps(membership))
        candidate.update(json.loads(json.dumps(changes)))
        if not _membership_ok(candidate):
            return ("err", "validation_failed")
        membership.clear()
        membership.update(candidate)
        return ("ok", None)

    def remove_member(self, actor, membership_id):
        if actor is None:
            return ("err", "unauthenticated")
        membership = self._find("membership", membership_id)
        if membership is None:
            return ("err", "not_found")
        if not self._membership_access(actor, membership):
            return ("err", "forbidden")
        self.rows["membership"] = [
            m for m in self.rows["membership"] if m["id"] != membership_id
        ]
        return ("ok", None)

    def add_snippet(self, actor, title, body, language_tag):
        if actor is None:
            return ("err", "unauthenticated")
        row = {
            "owner_id": actor,
            "title": title,
            "language_tag": language_tag,
            "body": body,
        }
        if not _snippet_ok(row):
            return ("err", "validation_failed")
        if self._find("user", actor) is None:
            return ("err", "not_found")
        row["id"] = self._new_id("snippet")
        row["created_at"] = self._now()
        self.rows["snippet"].append(row)
        return ("ok", row["id"])

    def delete_snippet(self, actor, snippet_id):
        if actor is None:
            return ("err", "unauthenticated")
        snippet = self._find("snippet", snippet_id)
        if snippet is None:
            return ("err", "not_found")
        if snippet["owner_id"] != actor:
            return ("err", "forbidden")
        self.rows["snippet"] = [s for s in self.rows["snippet"] if s["id"] != snippet_id]
        return ("ok", None)

    def assemble_portfolio(self, subject, page_number, page_size):
        user = self._find("user", subject)
        if user is None:
            return ("err", "not_found")
        if page_number < 1 or page_size < 1:
            return ("err", "invalid_page")
        entries = []
        for m in self.rows["membership"]:
            if m["user_id"] != subject:
                continue
            project = self._find("project", m["project_id"])
            entries.append(
                {
                    "project_id": m["project_id"],
                    "project_title": project["title"],
                    "responsibility": m["responsibility"],
                    "task_description": m["task_description"],
                }
            )
        start = (page_number - 1) * page_size
        shown = entries[start : start + page_size]
        view = {
            "user_id": subject,
            "personal": json.loads(json.dumps(user["personal"])),
            "professional": json.loads(json.dumps(user["professional"])),
            "presence": json.loads(json.dumps(user["personal"]["presence_links"])),
            "projects": {
                "items": shown,
                "page": page_number,
                "page_size": page_size,
                "total": len(entries),
                "display": _display(page_number, page_size, len(shown), len(entries)),
            },
            "snippets": [
                {
                    "id": s["id"],
                    "title": s["title"],
                    "language_tag": s["language_tag"],
                    "body": s["body"],
                    "created_at": s["created_at"],
                }
                for s in reversed(self.rows["snippet"])
                if s["owner_id"] == subject
            ],
        }
        return ("ok", view)

    def coworkers(self, subject):
        if self._find("user", subject) is None:
            return ("err", "not_found")
        mine = {m["project_id"] for m in self.rows["membership"] if m["user_id"] == subject}
        others = {
            m["user_id"]
            for m in self.rows["membership"]
            if m["project_id"] in mine and m["user_id"] != subject
        }
        return ("ok", sorted(others))

    def search_profiles(self, keyword, page_number, page_size):
        needle = keyword.strip().casefold()
        if not needle:
            return ("err", "empty_keyword")
        if page_number < 1 or page_size < 1:
            return ("err", "invalid_page")
        found = []
        for user in self.rows["user"]:
            name = f"{user['personal']['first_name']} {user['personal']['last_name']}"
            pool = [name, user["professional"]["headline"], *user["professional"]["specialities"]]
            if any(needle in text.casefold() for text in pool):
                found.append(
                    {
                        "user_id": user["id"],
                        "name": name,
                        "headline": user["professional"]["headline"],
                        "specialities": list(user["professional"]["specialities"]),
                    }
                )
        start = (page_number - 1) * page_size
        shown = found[start : start + page_size]
        return (
            "ok",
            {
                "items": shown,
                "page": page_number,
                "page_size": page_size,
                "total": len(found),
                "display": _display(page_number, page_size, len(shown), len(found)),
            },
        )

    def dump(self):
        document = {
            "counters": dict(self.assigned),
            "records": {k: {r["id"]: r for r in self.rows[k]} for k in KINDS},
        }
        return (
            json.dumps(document, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
        )
