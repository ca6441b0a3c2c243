from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class EqVerdict:
    """Three-valued equality answer. ``equal``/``unequal`` are final."""

    kind: str  # "equal" | "unequal" | "unknown"
    budget: int | None = None

    @property
    def is_equal(self) -> bool:
        return self.kind == "equal"

    @property
    def is_unequal(self) -> bool:
        return self.kind == "unequal"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"

    def __str__(self) -> str:
        if self.kind == "unknown" and self.budget is not None:
            return f"unknown (budget {self.budget})"
        return self.kind


EQUAL = EqVerdict("equal")
UNEQUAL = EqVerdict("unequal")


def unknown(budget: int | None = None) -> EqVerdict:
    return EqVerdict("unknown", budget)


def from_bool(flag: bool | None, budget: int | None = None) -> EqVerdict:
    if flag is None:
        return unknown(budget)
    return EQUAL if flag else UNEQUAL
