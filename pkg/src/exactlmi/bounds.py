"""Closed-form degree bounds for the critical-point parametrizations."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

__all__ = ["BoundReport", "p_r", "index_set", "theta", "aggregate_bound", "bound_report"]


def _binom(a: int, b: int) -> int:
    # total convention: zero outside 0 <= b <= a
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def p_r(m: int, r: int) -> int:
    """Number of bilinear incidence equations once the identity block is pinned."""
    if not 0 <= r <= m:
        raise ValueError(f"need 0 <= r <= m, got m={m}, r={r}")
    return (m - r) * (m + r + 1) // 2


def _check(m: int, n: int, r: int) -> None:
    if m < 1 or n < 1 or not 0 <= r <= m - 1:
        raise ValueError(f"need m >= 1, n >= 1 and 0 <= r <= m-1, got ({m}, {n}, {r})")


def index_set(m: int, n: int, r: int) -> list[int]:
    _check(m, n, r)
    pr = p_r(m, r)
    lo = max(0, n - pr)
    hi = min(n - comb(m - r + 1, 2), r * (m - r))
    return list(range(lo, hi + 1))


def theta(m: int, n: int, r: int) -> int:
    """Multilinear Bezout bound on the per-configuration parametrization degree."""
    pr = p_r(m, r) if 0 <= r <= m else 0
    rk = r * (m - r)
    return sum(_binom(pr, n - k) * _binom(n - 1, k + pr - 1 - rk) * _binom(rk, k)
               for k in index_set(m, n, r))


def aggregate_bound(m: int, n: int, r_max: int) -> int:
    if not 0 <= r_max <= m - 1:
        raise ValueError(f"need 0 <= r_max <= m-1, got {r_max}")
    return sum(comb(m, r) * theta(m, n, r) for r in range(1, r_max + 1))


@dataclass(frozen=True)
class BoundReport:
    m: int
    n: int
    r: int
    p_r: int
    index_set: list[int]
    theta: int
    cube_bound: int

    def to_dict(self) -> dict:
        return {
            "m": self.m, "n": self.n, "r": self.r, "p_r": self.p_r,
            "index_set": list(self.index_set), "theta": self.theta,
            "cube_bound": self.cube_bound,
        }


def bound_report(m: int, n: int, r: int) -> BoundReport:
    pr = p_r(m, r)
    return BoundReport(m, n, r, pr, index_set(m, n, r), theta(m, n, r), comb(pr + n, n) ** 3)
