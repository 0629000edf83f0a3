"""Incidence systems A(Mx) Y(y) = 0, Y_iota = I over the rank stratum D_r,
their redundancy-free subsystem, and the regularity check."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .arith import MultiPoly, QMatrix
from .groebner import ResourceLimits, buchberger, ideal_dimension
from .pencil import SymmetricPencil, change_of_variables

__all__ = [
    "KernelConfiguration",
    "IncidenceSystem",
    "Regularity",
    "build_incidence",
    "reduce_redundancies",
    "is_reg",
    "kernel_configurations",
    "x_names",
    "y_name",
    "det_poly",
]


def x_names(n: int) -> list[str]:
    return [f"x{i}" for i in range(1, n + 1)]


def y_name(i: int, j: int) -> str:
    """Kernel entry in row i, column j (both 1-based)."""
    return f"y{i}_{j}"


@dataclass(frozen=True)
class KernelConfiguration:
    m: int
    r: int
    iota: tuple[int, ...]  # 1-based, sorted

    def __post_init__(self):
        iota = tuple(sorted(self.iota))
        object.__setattr__(self, "iota", iota)
        if len(iota) != self.m - self.r:
            raise ValueError("iota must have m - r elements")
        if len(set(iota)) != len(iota) or any(not 1 <= i <= self.m for i in iota):
            raise ValueError("iota must hold distinct indices in [1, m]")

    @property
    def k(self) -> int:
        return self.m - self.r

    def row_order(self) -> list[int]:
        """Rows of the identity block first, then the others (1-based)."""
        return list(self.iota) + [i for i in range(1, self.m + 1) if i not in self.iota]

    def free_rows(self) -> list[int]:
        return [i for i in range(1, self.m + 1) if i not in self.iota]

    def boolean_matrix(self) -> QMatrix:
        return QMatrix(self.k, self.m, [1 if j + 1 == i else 0 for i in self.iota for j in range(self.m)])


def kernel_configurations(m: int, r: int) -> list[KernelConfiguration]:
    """All iota of size m - r in lexicographic order."""
    return [KernelConfiguration(m, r, c) for c in combinations(range(1, m + 1), m - r)]


@dataclass
class IncidenceSystem:
    pencil: SymmetricPencil  # already composed with M
    config: KernelConfiguration
    vars_x: list[str]
    vars_y: list[str]
    polys_full: list[MultiPoly]
    polys_red: list[MultiPoly] = field(default_factory=list)
    g_entries: list[tuple[int, int, MultiPoly]] = field(default_factory=list)

    @property
    def roster(self) -> list[str]:
        return self.vars_x + self.vars_y

    @property
    def c(self) -> int:
        k = self.config.k
        return self.config.m * k + comb(k + 1, 2)

    @property
    def e(self) -> int:
        return comb(self.config.k, 2)

    @property
    def free_y(self) -> list[str]:
        return [y_name(i, j) for i in self.config.free_rows() for j in range(1, self.config.k + 1)]


def build_incidence(p: SymmetricPencil, M: QMatrix | None, iota: KernelConfiguration) -> IncidenceSystem:
    """Entries of A(Mx) Y(y) (column-major) followed by Y_iota - I (row-major)."""
    if iota.m != p.m:
        raise ValueError("kernel configuration does not match the pencil size")
    B = p if M is None else change_of_variables(p, M)
    m, k = p.m, iota.k
    xs = x_names(p.n)
    ys = [y_name(i, j) for i in range(1, m + 1) for j in range(1, k + 1)]
    roster = xs + ys
    A = B.matrix_polys(roster)
    Y = [[MultiPoly.var(y_name(i, j), roster) for j in range(1, k + 1)] for i in range(1, m + 1)]
    full = []
    for j in range(k):
        for i in range(m):
            s = MultiPoly({}, roster)
            for l in range(m):
                s = s + A[i][l] * Y[l][j]
            full.append(s)
    for a, i in enumerate(iota.iota):
        for b in range(k):
            full.append(Y[i - 1][b] - (1 if a == b else 0))
    return IncidenceSystem(B, iota, xs, ys, full)


def reduce_redundancies(sys: IncidenceSystem) -> IncidenceSystem:
    """Populate ``polys_red``: entries g_ij with i >= j after pinning Y_iota = I
    (rows relabeled so that iota comes first), plus Y_iota - I."""
    cfg = sys.config
    m, k = cfg.m, cfg.k
    roster = sys.roster
    A = sys.pencil.matrix_polys(roster)
    order = cfg.row_order()
    pinned = {}
    for a, i in enumerate(cfg.iota):
        for b in range(k):
            pinned[(i, b + 1)] = 1 if a == b else 0

    def yval(i: int, j: int) -> MultiPoly:
        if (i, j) in pinned:
            return MultiPoly.constant(pinned[(i, j)], roster)
        return MultiPoly.var(y_name(i, j), roster)

    g_entries = []
    for j in range(1, k + 1):
        for a, i in enumerate(order, start=1):
            if a < j:
                continue
            s = MultiPoly({}, roster)
            for l in range(1, m + 1):
                s = s + A[i - 1][l - 1] * yval(l, j)
            g_entries.append((i, j, s))
    pin = []
    for a, i in enumerate(cfg.iota):
        for b in range(k):
            pin.append(MultiPoly.var(y_name(i, b + 1), roster) - (1 if a == b else 0))
    sys.g_entries = g_entries
    sys.polys_red = [g for _, _, g in g_entries] + pin
    return sys


class Regularity(enum.Enum):
    REGULAR = "Regular"
    NOT_REGULAR = "NotRegular"
    EMPTY = "Empty"


def det_poly(mat: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant by expansion along rows with memoized column subsets."""
    k = len(mat)
    if k == 0:
        raise ValueError("empty matrix")
    roster = mat[0][0].vars
    memo: dict[tuple, MultiPoly] = {}

    def rec(row: int, cols: tuple) -> MultiPoly:
        if row == k:
            return MultiPoly.constant(1, roster)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        acc = MultiPoly({}, roster)
        sign = 1
        for pos, c in enumerate(cols):
            entry = mat[row][c]
            if entry:
                rest = cols[:pos] + cols[pos + 1:]
                term = entry * rec(row + 1, rest)
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[cols] = acc
        return acc

    return rec(0, tuple(range(k)))


# above this many maximal minors, is_reg switches to the multiplier systems
MAX_MINORS = 12


def is_reg(p: SymmetricPencil, iota: KernelConfiguration, r: int | None = None,
           limits: ResourceLimits | None = None) -> Regularity:
    """Decide whether V_r(A, iota) is empty, or smooth and equidimensional of
    the expected codimension.

    The pinned block Y_iota - I has an identity Jacobian block, so the check
    runs on the g-entries in (x, free y) after substitution.
    """
    if r is not None and iota.r != r:
        raise ValueError("rank bound does not match kernel configuration")
    sys = reduce_redundancies(build_incidence(p, None, iota))
    free = sys.free_y + sys.vars_x  # y before x: much smaller bases in practice
    g = [q.drop_vars([v for v in sys.vars_y if v not in sys.free_y]) for _, _, q in sys.g_entries]
    g = [q.extend(free) for q in g]
    gb = buchberger(g, "grevlex", free, limits)
    if gb.is_unit():
        return Regularity.EMPTY
    pr = len(g)
    expected = len(free) - pr
    if ideal_dimension(gb) != expected:
        return Regularity.NOT_REGULAR
    jac = [[q.diff(v) for v in free] for q in g]
    if comb(len(free), pr) <= MAX_MINORS:
        minors = []
        for cols in combinations(range(len(free)), pr):
            d = det_poly([[row[c] for c in cols] for row in jac])
            if d:
                minors.append(d)
        if not minors:
            return Regularity.NOT_REGULAR
        sing = buchberger(list(gb.generators) + minors, "grevlex", free, limits)
        return Regularity.REGULAR if sing.is_unit() else Regularity.NOT_REGULAR
    # Many minors: the Jacobian drops rank at a point iff some w != 0 has
    # w^T jac = 0 there. Normalizing one coordinate of w at a time gives pr
    # overdetermined bilinear systems, each of which must be inconsistent.
    for k in range(pr):
        ws = [f"_w{i}" for i in range(pr) if i != k]
        roster = sys.free_y + ws + sys.vars_x
        wv = [MultiPoly.constant(1, roster) if i == k else MultiPoly.var(f"_w{i}", roster) for i in range(pr)]
        eqs = [q.extend(roster) for q in g]
        for c in range(len(free)):
            acc = MultiPoly({}, roster)
            for w, row in zip(wv, jac):
                if row[c]:
                    acc = acc + w * row[c].extend(roster)
            if acc:
                eqs.append(acc)
        if not buchberger(eqs, "grevlex", roster, limits).is_unit():
            return Regularity.NOT_REGULAR
    return Regularity.REGULAR
