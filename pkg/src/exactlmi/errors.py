"""Exception types shared across the solver."""
from __future__ import annotations

from .groebner import NotShape, Timeout

__all__ = ["GenericityError", "CollisionError", "InternalError", "NotShape", "Timeout"]


class GenericityError(Exception):
    """The genericity assumptions the solver relies on are not satisfied.

    ``stage`` is one of ``"IsReg"``, ``"Dimension"``, ``"Shape"``,
    ``"Projection"``; ``context`` carries ``(r, iota, depth)`` when known.
    """

    def __init__(self, stage: str, message: str = "the input is not generic", context: dict | None = None):
        super().__init__(message)
        self.stage = stage
        self.context = dict(context or {})

    def __str__(self) -> str:
        extra = ", ".join(f"{k}={v}" for k, v in self.context.items())
        base = f"{self.args[0]} (stage {self.stage}"
        return base + (f"; {extra})" if extra else ")")


class CollisionError(Exception):
    """Two parametrizations send a shared root to different points."""


class InternalError(Exception):
    """A parametrization invariant was found violated."""
