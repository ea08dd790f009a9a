"""
Console status lines
Emoji-prefixed progress output; errors always reach stderr
"""
import sys

from src.config import get_config

_quiet = get_config().QUIET


def set_quiet(quiet: bool) -> None:
    global _quiet
    _quiet = quiet


class Console:
    """Status printer bound to one component name"""

    def __init__(self, component: str):
        self.component = component

    def _emit(self, icon: str, message: str) -> None:
        if not _quiet:
            print(f"{icon} {self.component}: {message}")

    def info(self, message: str) -> None:
        self._emit("🔄", message)

    def success(self, message: str) -> None:
        self._emit("✅", message)

    def warn(self, message: str) -> None:
        self._emit("⚠️", message)

    def error(self, message: str) -> None:
        print(f"❌ {self.component}: {message}", file=sys.stderr)
