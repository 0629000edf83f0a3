"""Semidefiniteness tests over parametrized finite sets: linear solve for the
rank-zero case, characteristic-polynomial coefficients, the LMI check at real
roots and exact rank certification."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .arith import MultiPoly, QMatrix, rref
from .errors import InternalError
from .incidence import det_poly, x_names
from .pencil import SymmetricPencil
from .ratpar import RationalParametrization, compose_matrix, compose_numerator, det_mod
from .realroots import RealAlgebraicNumber, approximate_ratio, isolate_roots, sign_at

__all__ = [
    "CharPolyCoeffs",
    "Empty",
    "LinearPoint",
    "Witness",
    "solve_linear",
    "char_poly_coeffs",
    "check_lmi",
    "rank_at",
    "accepted_roots",
    "point_enclosure",
    "is_psd_by_coeffs",
]


@dataclass(frozen=True)
class CharPolyCoeffs:
    """``f[k-1]`` is f_k, the coefficient of s^(m-k) in det(A(x) + s I)."""

    m: int
    vars: tuple[str, ...]
    f: tuple[MultiPoly, ...]


@dataclass(frozen=True)
class Empty:
    tag: str = field(default="Empty", init=False)


@dataclass(frozen=True)
class LinearPoint:
    coords: tuple[Fraction, ...]
    tag: str = field(default="LinearPoint", init=False)


@dataclass(frozen=True)
class Witness:
    rp: RationalParametrization
    root: RealAlgebraicNumber
    rank: int
    accepted: tuple[RealAlgebraicNumber, ...] = ()
    real_roots: int = 0
    tag: str = field(default="Witness", init=False)


def solve_linear(p: SymmetricPencil) -> tuple[Fraction, ...] | None:
    """A solution of A(x) = 0 (free variables set to 0), or None."""
    n, m = p.n, p.m
    rows = []
    for i in range(m):
        for j in range(i, m):
            rows.append([p.mats[k + 1][i, j] for k in range(n)] + [-p.mats[0][i, j]])
    red, piv = rref(QMatrix.from_rows(rows))
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(piv):
        x[c] = red[r, n]
    return tuple(x)


def char_poly_coeffs(p: SymmetricPencil, vars: Sequence[str] | None = None) -> CharPolyCoeffs:
    xs = tuple(vars) if vars is not None else tuple(x_names(p.n))
    s = "_s"
    roster = xs + (s,)
    A = p.matrix_polys(roster)
    sv = MultiPoly.var(s, roster)
    for i in range(p.m):
        A[i][i] = A[i][i] + sv
    det = det_poly(A)
    by_power: dict[int, dict] = {}
    for e, c in det.terms.items():
        by_power.setdefault(e[-1], {})[e[:-1]] = c
    f = tuple(MultiPoly(by_power.get(p.m - k, {}), xs) for k in range(1, p.m + 1))
    return CharPolyCoeffs(p.m, xs, f)


def is_psd_by_coeffs(cp: CharPolyCoeffs, x: Sequence) -> bool:
    """A(x) is PSD iff every f_k(x) >= 0 (symmetric matrices only)."""
    return all(fk(list(x)) >= 0 for fk in cp.f)


def _coefficient_signs(cp: CharPolyCoeffs, rp: RationalParametrization, composed,
                       alpha: RealAlgebraicNumber) -> list[int]:
    q0_sign = sign_at(rp.q0, alpha)
    if q0_sign == 0:
        raise InternalError("q0 vanishes at a root of qn1")
    # f_k(x(t)) = N(t) / q0(t)^d: only the parity of d matters
    return [sign_at(num, alpha) * (q0_sign if d % 2 else 1) for num, d in composed]


def _compose_all(cp: CharPolyCoeffs, rp: RationalParametrization):
    return [compose_numerator(rp, fk) for fk in cp.f]


def accepted_roots(p: SymmetricPencil, rp: RationalParametrization,
                   cp: CharPolyCoeffs | None = None) -> list[tuple[RealAlgebraicNumber, list[int]]]:
    """All real roots of qn1 (ascending) at which A(x(t)) is PSD, with the signs of f."""
    if rp.is_empty:
        return []
    cp = cp or char_poly_coeffs(p)
    composed = _compose_all(cp, rp)
    out = []
    for alpha in isolate_roots(rp.qn1):
        signs = _coefficient_signs(cp, rp, composed, alpha)
        if all(s >= 0 for s in signs):
            out.append((alpha, signs))
    return out


def check_lmi(p: SymmetricPencil, rp: RationalParametrization,
              cp: CharPolyCoeffs | None = None) -> tuple[RealAlgebraicNumber, list[int]] | None:
    """First real root (ascending) where A(x(t)) is PSD, with the signs of f_1..f_m."""
    if rp.is_empty:
        return None
    cp = cp or char_poly_coeffs(p)
    composed = _compose_all(cp, rp)
    for alpha in isolate_roots(rp.qn1):
        signs = _coefficient_signs(cp, rp, composed, alpha)
        if all(s >= 0 for s in signs):
            return alpha, signs
    return None


def rank_at(p: SymmetricPencil, rp: RationalParametrization, root: RealAlgebraicNumber,
            cp: CharPolyCoeffs | None = None) -> int:
    """Exact rank of A(x(root)) from the trailing zero coefficients of the
    characteristic polynomial, cross-checked by a nonvanishing minor."""
    if rp.is_empty:
        raise ValueError("empty parametrization has no roots")
    cp = cp or char_poly_coeffs(p)
    q0_sign = sign_at(rp.q0, root)
    if q0_sign == 0:
        raise InternalError("q0 vanishes at a root of qn1")
    zeros = 0
    for fk in reversed(cp.f):
        num, d = compose_numerator(rp, fk)
        if sign_at(num, root) != 0:
            break
        zeros += 1
    rank = p.m - zeros
    if rank > 0:
        # some rank x rank minor of q0 * A(x(t)) must be nonzero at the root
        E = compose_matrix(rp, p)
        found = False
        for rows in combinations(range(p.m), rank):
            for cols in combinations(range(p.m), rank):
                if cols < rows:
                    continue
                minor = det_mod([[E[i][j] for j in cols] for i in rows], rp.qn1)
                if sign_at(minor, root) != 0:
                    found = True
                    break
            if found:
                break
        if not found:
            raise InternalError("rank cross-check failed: every minor of the claimed size vanishes")
    return rank


def point_enclosure(rp: RationalParametrization, root: RealAlgebraicNumber,
                    width) -> list[tuple[Fraction, Fraction]]:
    """Intervals of width <= ``width`` around each coordinate at ``root``."""
    return [approximate_ratio(q, rp.q0, root, width) for q in rp.qi]
