"""Command line entry points: serve, seed, dump.

Configuration comes from flags with environment-variable fallbacks
(FOLIONET_STORAGE, FOLIONET_PORT, FOLIONET_HOST, FOLIONET_SESSION_TTL,
FOLIONET_PAGE_SIZE); a flag always wins over its variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .accounts import DEFAULT_TTL_SECONDS, AccountService
from .api import create_app, parse_personal, parse_professional
from .model import DEFAULT_PAGE_SIZE
from .service import PortfolioService
from .storage import RecordKey, open_store


def _setting(flag_value, env_name: str, default, convert=str):
    if flag_value is not None:
        return flag_value
    raw = os.environ.get(env_name)
    if raw is not None:
        return convert(raw)
    return default


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="folionet", description="Portfolio social network service"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP server")
    serve.add_argument("--port", type=int, default=None, help="listen port")
    serve.add_argument("--host", default=None, help="listen address")
    serve.add_argument("--storage", default=None, help="journal file path")
    serve.add_argument(
        "--session-ttl", type=int, default=None, help="session lifetime in seconds"
    )
    serve.add_argument(
        "--page-size", type=int, default=None, help="default listing page size"
    )
    serve.add_argument(
        "--webapp", default=None, help="serve a built browser client from this directory"
    )

    seed = sub.add_parser("seed", help="load a fixture file into the store")
    seed.add_argument("fixture", help="path to a fixture JSON document")
    seed.add_argument("--storage", default=None, help="journal file path")

    dump = sub.add_parser("dump", help="print the store as canonical JSON")
    dump.add_argument("--storage", default=None, help="journal file path")

    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    config = {
        "storage": _setting(getattr(args, "storage", None), "FOLIONET_STORAGE", None)
    }
    if args.command == "serve":
        config.update(
            port=_setting(args.port, "FOLIONET_PORT", 8080, int),
            host=_setting(args.host, "FOLIONET_HOST", "127.0.0.1"),
            session_ttl=_setting(
                args.session_ttl, "FOLIONET_SESSION_TTL", DEFAULT_TTL_SECONDS, int
            ),
            page_size=_setting(
                args.page_size, "FOLIONET_PAGE_SIZE", DEFAULT_PAGE_SIZE, int
            ),
            webapp=_setting(args.webapp, "FOLIONET_WEBAPP", None),
        )
    return config


def load_fixture(store, fixture: dict) -> dict[str, str]:
    """Replay a fixture through the normal service operations.

    Returns a mapping of user email to assigned user id. Entries reference
    users by email and projects by title, so fixtures stay readable.
    """
    accounts = AccountService(store)
    service = PortfolioService(store)
    user_ids: dict[str, str] = {}
    project_ids: dict[str, str] = {}
    for user in fixture.get("users", []):
        uid = accounts.register(
            email=user["email"],
            password=user["password"],
            first_name=user["first_name"],
            last_name=user["last_name"],
        )
        user_ids[user["email"]] = uid
        if "personal" in user or "professional" in user:
            personal = {
                "first_name": user["first_name"],
                "last_name": user["last_name"],
                "email": user["email"],
                **user.get("personal", {}),
            }
            service.upsert_profile(
                uid,
                uid,
                parse_personal(personal),
                parse_professional(user.get("professional", {})),
            )
    for project in fixture.get("projects", []):
        creator = user_ids[project["created_by"]]
        pid = service.create_project(
            creator,
            title=project["title"],
            description=project.get("description", ""),
            skills_required=project.get("skills_required", []),
            dedicated_hours=project.get("dedicated_hours"),
        )
        project_ids[project["title"]] = pid
    for membership in fixture.get("memberships", []):
        pid = project_ids[membership["project"]]
        creator = store.get(RecordKey("project", pid))["created_by"]
        service.add_member(
            creator,
            pid,
            member_user_id=user_ids[membership["member"]],
            responsibility=membership["responsibility"],
            task_description=membership.get("task_description", ""),
        )
    for snippet in fixture.get("snippets", []):
        service.add_snippet(
            user_ids[snippet["owner"]],
            title=snippet["title"],
            body=snippet["body"],
            language_tag=snippet.get("language_tag"),
        )
    return user_ids


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = resolve_config(args)

    if args.command == "serve":
        import uvicorn

        app = create_app(
            storage_path=config["storage"],
            session_ttl=config["session_ttl"],
            page_size=config["page_size"],
            webapp_dir=config["webapp"],
        )
        uvicorn.run(app, host=config["host"], port=config["port"], log_level="warning")
        return 0

    if args.command == "seed":
        with open(args.fixture, encoding="utf-8") as fh:
            fixture = json.load(fh)
        store = open_store(config["storage"])
        try:
            user_ids = load_fixture(store, fixture)
        finally:
            store.close()
        print(f"seeded {len(user_ids)} user(s)")
        return 0

    if args.command == "dump":
        store = open_store(config["storage"])
        try:
            sys.stdout.write(store.dump())
        finally:
            store.close()
        return 0

    return 2


if __name__ == "__main__":
    raise SystemExit(main())
