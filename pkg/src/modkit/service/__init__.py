from .app import create_app
from .config import ServiceConfig
from .snapshots import compute_snapshots
from .state import Phase, STRATEGIES, SessionState
from .store import SessionDirectory, SessionRuntime, SessionStore

__all__ = [
    "Phase",
    "STRATEGIES",
    "ServiceConfig",
    "SessionDirectory",
    "SessionRuntime",
    "SessionState",
    "SessionStore",
    "compute_snapshots",
    "create_app",
]
