"""Shared fixtures: deterministic clock, cheap digests, canonical demo data."""

from __future__ import annotations

from datetime import datetime, timedelta

import pytest

from folionet.accounts import AccountService
from folionet.service import PortfolioService
from folionet.storage import MemoryStore

# Low scrypt cost for tests; the digest format and verify path are identical
# to the production parameters.
TEST_SCRYPT_N = 16


class ManualClock:
    """A clock tests can set and advance explicitly."""

    def __init__(self, start: str = "2026-01-01T00:00:00+00:00"):
        self.current = datetime.fromisoformat(start)

    def __call__(self) -> datetime:
        return self.current

    def advance(self, seconds: float) -> None:
        self.current += timedelta(seconds=seconds)


# Canonical demo portfolio used across fixture, API and acceptance tests.
DEMO_PERSONAL = {
    "first_name": "Josep",
    "last_name": "Colom",
    "email": "josep@josep.com",
    "country": "Austria",
    "city": "Viena",
    "birthday": "1984-06-04",
    "website_url": "www.josepcolom.com",
    "presence_links": [
        {"network_name": "Twitter", "url": "http://www.twitter.com/josepcolom"},
        {"network_name": "LinkedIn", "url": "http://www.linkedin.com/in/josepcolom"},
    ],
}
DEMO_PROFESSIONAL = {
    "headline": "Telecommunications and software engineer",
    "specialities": [
        "Video Coding",
        "LTE",
        "Mobile communications",
        "Networks",
        "Management",
    ],
    "summary": (
        "Telecommunications Engineer with expertise in video coding (focused on "
        "the H.264/AVC codec), wireless systems, link and system level "
        "simulation, networks, services and management. Actually focused on LTE "
        "system level modeling/simulation and optimization."
    ),
}
DEMO_PASSWORD = "firefox-bugs-2013"
DEMO_PROJECT_TITLE = "Firefox Web Browser"
DEMO_PROJECT_DESCRIPTION = "Open source web browser developed with the Mozilla community."
DEMO_RESPONSIBILITY = "Programming contributor"
DEMO_TASK = (
    "My task in the Mozilla foundation is to help to the developer team to "
    "find bugs and give advice."
)
DEMO_DISPLAY = "Displaying 1-1 of 1 result(s)."


@pytest.fixture
def clock() -> ManualClock:
    return ManualClock()


@pytest.fixture
def store(clock) -> MemoryStore:
    return MemoryStore(clock=clock)


@pytest.fixture
def accounts(store, clock) -> AccountService:
    return AccountService(store, clock=clock, scrypt_n=TEST_SCRYPT_N)


@pytest.fixture
def service(store, clock) -> PortfolioService:
    return PortfolioService(store, clock=clock)


def register_user(accounts: AccountService, email: str, first="Test", last="User"):
    return accounts.register(email, "a sensible password", first, last)


def seed_demo_via_service(accounts: AccountService, service: PortfolioService):
    """Create the demo user with full profile, project, membership, snippet."""
    from folionet.api import parse_personal, parse_professional

    uid = accounts.register(
        DEMO_PERSONAL["email"], DEMO_PASSWORD, "Josep", "Colom"
    )
    service.upsert_profile(
        uid, uid, parse_personal(DEMO_PERSONAL), parse_professional(DEMO_PROFESSIONAL)
    )
    pid = service.create_project(
        uid, title=DEMO_PROJECT_TITLE, description=DEMO_PROJECT_DESCRIPTION
    )
    mid = service.add_member(
        uid, pid, uid, DEMO_RESPONSIBILITY, DEMO_TASK
    )
    return {"user": uid, "project": pid, "membership": mid}
