"""HTTP layer: routing, session resolution, rendering and error mapping.

Request lifecycle, in order: parse the body, resolve the bearer session,
dispatch to exactly one service operation, render the result as JSON. Every
response carries an ``X-Trace-Id`` header; error bodies repeat the trace id
so a client report can be matched to a request.

Internal failures render as a bare ``internal`` error: stack traces and
storage details never reach the wire.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from starlette.exceptions import HTTPException as StarletteHTTPException
from starlette.middleware.base import BaseHTTPMiddleware

from .accounts import DEFAULT_TTL_SECONDS, AccountService
from .errors import InvalidPage, Malformed, ServiceError, Unauthenticated
from .model import (
    DEFAULT_PAGE_SIZE,
    PersonalInfo,
    PresenceLink,
    ProfessionalInfo,
)
from .service import PortfolioService
from .storage import Clock, MemoryStore, open_store

# Transport status for each error code; anything absent maps to 500 internal.
ERROR_STATUS = {
    "validation_failed": 422,
    "unauthenticated": 401,
    "invalid_credentials": 401,
    "forbidden": 403,
    "not_found": 404,
    "duplicate_key": 409,
    "duplicate_email": 409,
    "duplicate_membership": 409,
    "invalid_page": 400,
    "empty_keyword": 400,
    "invalid_email": 400,
    "weak_password": 400,
    "malformed": 400,
    "immutable_field_changed": 400,
    "method_not_allowed": 405,
}


@dataclass
class ApiError:
    status: int
    code: str
    message: str
    violations: list[tuple[str, str]] | None = None

    def render(self, trace_id: str) -> JSONResponse:
        error: dict = {
            "code": self.code,
            "message": self.message,
            "trace_id": trace_id,
        }
        if self.violations is not None:
            error["violations"] = [
                {"field_path": path, "message": message}
                for path, message in self.violations
            ]
        return JSONResponse(status_code=self.status, content={"error": error})


def map_error(exc: ServiceError) -> ApiError:
    """Total mapping from service errors to transport errors."""
    status = ERROR_STATUS.get(exc.code)
    if status is None:
        return ApiError(status=500, code="internal", message="internal error")
    return ApiError(
        status=status,
        code=exc.code,
        message=exc.message,
        violations=exc.violations if exc.code == "validation_failed" else None,
    )


@dataclass
class RequestContext:
    """Everything a handler needs, assembled once per request."""

    method: str
    path: str
    actor: str | None
    body: dict | None
    trace_id: str
    token: str | None


class TraceIdMiddleware(BaseHTTPMiddleware):
    async def dispatch(self, request, call_next):
        request.state.trace_id = uuid.uuid4().hex
        response = await call_next(request)
        response.headers["X-Trace-Id"] = request.state.trace_id
        return response


# -- body parsing helpers ----------------------------------------------------
#
# Shape errors (wrong types, unknown fields) are "malformed" and stop at the
# parse step; value errors surface later as validation_failed with field
# paths. The strict unknown-field check is also what keeps out-of-scope
# payloads (education history, image uploads) off every endpoint.


def _check_keys(body: dict, allowed: set[str], where: str = "body") -> None:
    unknown = set(body) - allowed
    if unknown:
        raise Malformed(f"unknown field(s) in {where}: {', '.join(sorted(unknown))}")


def _need_str(body: dict, key: str, where: str = "body") -> str:
    if key not in body:
        raise Malformed(f"missing field {key!r} in {where}")
    value = body[key]
    if not isinstance(value, str):
        raise Malformed(f"field {key!r} must be a string")
    return value


def _opt_str(body: dict, key: str, default: str = "") -> str:
    value = body.get(key, default)
    if not isinstance(value, str):
        raise Malformed(f"field {key!r} must be a string")
    return value


def _opt_str_or_none(body: dict, key: str) -> str | None:
    value = body.get(key)
    if value is not None and not isinstance(value, str):
        raise Malformed(f"field {key!r} must be a string or null")
    return value


def _opt_str_list(body: dict, key: str) -> list[str]:
    value = body.get(key, [])
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise Malformed(f"field {key!r} must be a list of strings")
    return value


def _opt_hours(body: dict, key: str = "dedicated_hours") -> int | None:
    value = body.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise Malformed(f"field {key!r} must be an integer or null")
    return value


def _need_dict(body: dict, key: str) -> dict:
    if key not in body or not isinstance(body[key], dict):
        raise Malformed(f"field {key!r} must be an object")
    return body[key]


PERSONAL_FIELDS = {
    "first_name",
    "last_name",
    "email",
    "country",
    "city",
    "birthday",
    "website_url",
    "presence_links",
}
PROFESSIONAL_FIELDS = {"headline", "specialities", "summary"}


def parse_personal(data: dict) -> PersonalInfo:
    _check_keys(data, PERSONAL_FIELDS, "personal")
    links_raw = data.get("presence_links", [])
    if not isinstance(links_raw, list):
        raise Malformed("field 'presence_links' must be a list")
    links = []
    for entry in links_raw:
        if not isinstance(entry, dict):
            raise Malformed("presence_links entries must be objects")
        _check_keys(entry, {"network_name", "url"}, "presence_links")
        links.append(
            PresenceLink(
                network_name=_need_str(entry, "network_name", "presence_links"),
                url=_need_str(entry, "url", "presence_links"),
            )
        )
    return PersonalInfo(
        first_name=_need_str(data, "first_name", "personal"),
        last_name=_need_str(data, "last_name", "personal"),
        email=_need_str(data, "email", "personal"),
        country=_opt_str(data, "country"),
        city=_opt_str(data, "city"),
        birthday=_opt_str_or_none(data, "birthday"),
        website_url=_opt_str_or_none(data, "website_url"),
        presence_links=links,
    )


def parse_professional(data: dict) -> ProfessionalInfo:
    _check_keys(data, PROFESSIONAL_FIELDS, "professional")
    return ProfessionalInfo(
        headline=_opt_str(data, "headline"),
        specialities=_opt_str_list(data, "specialities"),
        summary=_opt_str(data, "summary"),
    )


def _page_params(request: Request, default_size: int) -> tuple[int, int]:
    params = request.query_params

    def read(name: str, default: int) -> int:
        raw = params.get(name)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            raise InvalidPage(f"{name} must be an integer") from None

    return read("page", 1), read("page_size", default_size)


def create_app(
    store: MemoryStore | None = None,
    *,
    storage_path: str | None = None,
    session_ttl: int = DEFAULT_TTL_SECONDS,
    page_size: int = DEFAULT_PAGE_SIZE,
    clock: Clock | None = None,
    token_source=None,
    salt_source=None,
    scrypt_n: int | None = None,
    webapp_dir: str | None = None,
) -> FastAPI:
    """Build the application with its store, accounts and service wired up.

    ``webapp_dir`` optionally serves a built browser client from the same
    origin; the /v1 surface is unaffected.
    """
    if store is None:
        store = open_store(storage_path, clock=clock)
    accounts_kwargs = dict(
        clock=clock,
        token_source=token_source,
        salt_source=salt_source,
        ttl_seconds=session_ttl,
    )
    if scrypt_n is not None:
        accounts_kwargs["scrypt_n"] = scrypt_n
    accounts = AccountService(store, **accounts_kwargs)
    service = PortfolioService(store, clock=clock, default_page_size=page_size)

    app = FastAPI(title="folionet", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(TraceIdMiddleware)
    app.state.store = store
    app.state.accounts = accounts
    app.state.service = service

    async def context(request: Request, *, with_body: bool) -> RequestContext:
        body = None
        if with_body:
            try:
                body = await request.json()
            except Exception:
                raise Malformed("request body is not valid JSON") from None
            if not isinstance(body, dict):
                raise Malformed("request body must be a JSON object")
        token = None
        actor = None
        header = request.headers.get("authorization", "")
        if header.startswith("Bearer "):
            token = header[len("Bearer ") :]
            try:
                actor = accounts.resolve_session(token)
            except Unauthenticated:
                actor = None
        return RequestContext(
            method=request.method,
            path=request.url.path,
            actor=actor,
            body=body,
            trace_id=request.state.trace_id,
            token=token,
        )

    # -- accounts routes ----------------------------------------------------

    async def register(request: Request) -> Response:
        ctx = await context(request, with_body=True)
        _check_keys(ctx.body, {"email", "password", "first_name", "last_name"})
        user_id = accounts.register(
            email=_need_str(ctx.body, "email"),
            password=_need_str(ctx.body, "password"),
            first_name=_need_str(ctx.body, "first_name"),
            last_name=_need_str(ctx.body, "last_name"),
        )
        return JSONResponse(status_code=201, content={"user_id": user_id})

    async def open_session(request: Request) -> Response:
        ctx = await context(request, with_body=True)
        _check_keys(ctx.body, {"email", "password"})
        session = accounts.authenticate(
            _need_str(ctx.body, "email"), _need_str(ctx.body, "password")
        )
        return JSONResponse(
            status_code=201,
            content={
                "token": session.token,
                "user_id": session.user_id,
                "expires_at": session.expires_at,
            },
        )

    async def close_session(request: Request) -> Response:
        ctx = await context(request, with_body=False)
        if ctx.token is None:
            raise Unauthenticated("no session token presented")
        accounts.revoke_session(ctx.token)
        return Response(status_code=204)

    # -- profile and portfolio ----------------------------------------------

    async def put_profile(request: Request) -> Response:
        ctx = await context(request, with_body=True)
        _check_keys(ctx.body, {"personal", "professional"})
        service.upsert_profile(
            ctx.actor,
            request.path_params["user_id"],
            parse_personal(_need_dict(ctx.body, "personal")),
            parse_professional(_need_dict(ctx.body, "professional")),
        )
        return Response(status_code=204)

    async def get_portfolio(request: Request) -> Response:
        ctx = await context(request, with_body=False)
        page, size = _page_params(request, page_size)
        view = service.assemble_portfolio(
            request.path_params["user_id"], page_number=page, page_size=size
        )
        return JSONResponse(status_code=200, content=view.to_dict())

    async def get_coworkers(request: Request) -> Response:
        await context(request, with_body=False)
        ids = service.coworkers(request.path_params["user_id"])
        return JSONResponse(status_code=200, content={"coworkers": ids})

    async def search_profiles(request: Request) -> Response:
        await context(request, with_body=False)
        page, size = _page_params(request, page_size)
        result = service.search_profiles(
            request.query_params.get("q", ""), page_number=page, page_size=size
        )
        return JSONResponse(status_code=200, content=result.to_dict())

    # -- projects, memberships, snippets -------------------------------------

    async def post_project(request: Request) -> Response:
        ctx = await context(request, with_body=True)
        _check_keys(
            ctx.body, {"title", "description", "skills_required", "dedicated_hours"}
        )
        project_id = service.create_project(
            ctx.actor,
            title=_need_str(ctx.body, "title"),
            description=_opt_str(ctx.body, "description"),
            skills_required=_opt_str_list(ctx.body, "skills_required"),
            dedicated_hours=_opt_hours(ctx.body),
        )
        return JSONResponse(status_code=201, content={"project_id": project_id})

    async def patch_project(request: Request) -> Response:
        ctx = await context(request, with_body=True)
        _check_keys(
            ctx.body,
            {
                "title",
                "description",
                "skills_required",
                "people_in_charge",
                "dedicated_hours",
            },
        )
        changes: dict = {}
        if "title" in ctx.body:
            changes["title"] = _need_str(ctx.body, "title")
        if "description" in ctx.body:
            changes["description"] = _need_str(ctx.body, "description")
        if "skills_required" in ctx.body:
            changes["skills_required"] = _opt_str_list(ctx.body, "skills_required")
        if "people_in_charge" in ctx.body:
            changes["people_in_charge"] = _opt_str_list(ctx.body, "people_in_charge")
        if "dedicated_hours" in ctx.body:
            changes["dedicated_hours"] = _opt_hours(ctx.body)
        service.update_project(ctx.actor, request.path_params["project_id"], changes)
        return Response(status_code=204)

    async def post_member(request: Request) -> Response:
        ctx = await context(request, with_body=True)
        _check_keys(ctx.body, {"user_id", "responsibility", "task_description"})
        membership_id = service.add_member(
            ctx.actor,
            request.path_params["project_id"],
            member_user_id=_need_str(ctx.body, "user_id"),
            responsibility=_need_str(ctx.body, "responsibility"),
            task_description=_opt_str(ctx.body, "task_description"),
        )
        return JSONResponse(status_code=201, content={"membership_id": membership_id})

    async def patch_membership(request: Request) -> Response:
        ctx = await context(request, with_body=True)
        _check_keys(ctx.body, {"responsibility", "task_description"})
        changes = {}
        if "responsibility" in ctx.body:
            changes["responsibility"] = _need_str(ctx.body, "responsibility")
        if "task_description" in ctx.body:
            changes["task_description"] = _need_str(ctx.body, "task_description")
        service.update_membership(
            ctx.actor, request.path_params["membership_id"], changes
        )
        return Response(status_code=204)

    async def delete_membership(request: Request) -> Response:
        ctx = await context(request, with_body=False)
        service.remove_member(ctx.actor, request.path_params["membership_id"])
        return Response(status_code=204)

    async def post_snippet(request: Request) -> Response:
        ctx = await context(request, with_body=True)
        _check_keys(ctx.body, {"title", "language_tag", "body"})
        snippet_id = service.add_snippet(
            ctx.actor,
            title=_need_str(ctx.body, "title"),
            body=_need_str(ctx.body, "body"),
            language_tag=_opt_str_or_none(ctx.body, "language_tag"),
        )
        return JSONResponse(status_code=201, content={"snippet_id": snippet_id})

    async def delete_snippet(request: Request) -> Response:
        ctx = await context(request, with_body=False)
        service.delete_snippet(ctx.actor, request.path_params["snippet_id"])
        return Response(status_code=204)

    # One route per service operation; nothing else is reachable.
    routes = [
        ("POST", "/v1/users", register),
        ("POST", "/v1/sessions", open_session),
        ("DELETE", "/v1/sessions/current", close_session),
        ("GET", "/v1/users/{user_id}/portfolio", get_portfolio),
        ("PUT", "/v1/users/{user_id}/profile", put_profile),
        ("POST", "/v1/projects", post_project),
        ("PATCH", "/v1/projects/{project_id}", patch_project),
        ("POST", "/v1/projects/{project_id}/members", post_member),
        ("PATCH", "/v1/memberships/{membership_id}", patch_membership),
        ("DELETE", "/v1/memberships/{membership_id}", delete_membership),
        ("POST", "/v1/snippets", post_snippet),
        ("DELETE", "/v1/snippets/{snippet_id}", delete_snippet),
        ("GET", "/v1/users/{user_id}/coworkers", get_coworkers),
        ("GET", "/v1/search/profiles", search_profiles),
    ]
    for method, path, handler in routes:
        app.add_api_route(path, handler, methods=[method])

    if webapp_dir is not None:
        import os

        from fastapi.responses import FileResponse

        root = os.path.realpath(webapp_dir)

        # Registered after the API routes, so /v1 always wins; unknown /v1
        # paths keep their JSON 404. Anything else serves the client bundle,
        # with index.html as the single-page fallback.
        async def webapp_assets(request: Request) -> Response:
            asset_path = request.path_params["asset_path"]
            if asset_path == "v1" or asset_path.startswith("v1/"):
                raise StarletteHTTPException(status_code=404)
            candidate = os.path.realpath(os.path.join(root, asset_path))
            if candidate.startswith(root + os.sep) and os.path.isfile(candidate):
                return FileResponse(candidate)
            return FileResponse(os.path.join(root, "index.html"))

        app.add_api_route("/{asset_path:path}", webapp_assets, methods=["GET"])

    # -- error rendering ------------------------------------------------------

    def _trace_id(request: Request) -> str:
        return getattr(request.state, "trace_id", "")

    @app.exception_handler(ServiceError)
    async def service_error_handler(request: Request, exc: ServiceError):
        return map_error(exc).render(_trace_id(request))

    @app.exception_handler(StarletteHTTPException)
    async def http_exception_handler(request: Request, exc: StarletteHTTPException):
        if exc.status_code == 405:
            error = ApiError(405, "method_not_allowed", "method not allowed")
        elif exc.status_code == 404:
            error = ApiError(404, "not_found", "unknown route")
        else:
            error = ApiError(exc.status_code, "internal", "internal error")
        return error.render(_trace_id(request))

    @app.exception_handler(RequestValidationError)
    async def request_validation_handler(request: Request, exc):
        return ApiError(400, "malformed", "malformed request").render(
            _trace_id(request)
        )

    @app.exception_handler(Exception)
    async def unexpected_error_handler(request: Request, exc: Exception):
        return ApiError(500, "internal", "internal error").render(_trace_id(request))

    return app
