"""Three-valued verdicts shared by the oracle, witness and property checkers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

PROVED = "Proved"
REFUTED = "Refuted"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    status: str
    detail: str = ""
    counterexample: Optional[Any] = None
    bounded: bool = False

    @property
    def proved(self):
        return self.status == PROVED

    @property
    def refuted(self):
        return self.status == REFUTED

    @property
    def unknown(self):
        return self.status == UNKNOWN

    @property
    def sign(self):
        """'+', '-' or '?'."""
        return {PROVED: "+", REFUTED: "-"}.get(self.status, "?")

    def short(self):
        s = self.status
        if self.bounded and self.status != UNKNOWN:
            s += " (bounded)"
        return s

    def __str__(self):
        return f"{self.short()}: {self.detail}" if self.detail else self.short()


def proved(detail="", bounded=False):
    return Verdict(PROVED, detail, None, bounded)


def refuted(detail="", counterexample=None, bounded=False):
    return Verdict(REFUTED, detail, counterexample, bounded)


def unknown(detail=""):
    return Verdict(UNKNOWN, detail)
