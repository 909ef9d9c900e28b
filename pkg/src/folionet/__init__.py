"""folionet: a portfolio social network service.

Job seekers assemble career portfolios (profile, projects with
responsibilities, code snippets); recruiters read them over a public JSON
API without an account.
"""

from .accounts import AccountService, Session
from .api import create_app
from .errors import ServiceError
from .model import (
    CodeSnippet,
    Membership,
    Page,
    PersonalInfo,
    PresenceLink,
    ProfessionalInfo,
    Project,
    ValidationReport,
    paginate,
)
from .service import PortfolioService, PortfolioView, ProjectEntry
from .storage import FileStore, MemoryStore, RecordKey, StoreStats, open_store

__version__ = "0.1.0"

__all__ = [
    "AccountService",
    "CodeSnippet",
    "FileStore",
    "Membership",
    "MemoryStore",
    "Page",
    "PersonalInfo",
    "PortfolioService",
    "PortfolioView",
    "PresenceLink",
    "ProfessionalInfo",
    "Project",
    "ProjectEntry",
    "RecordKey",
    "ServiceError",
    "Session",
    "StoreStats",
    "ValidationReport",
    "create_app",
    "open_store",
    "paginate",
    "__version__",
]
