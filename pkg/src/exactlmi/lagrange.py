"""Critical-point systems for the projection (x, y) -> x1 on incidence varieties."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .arith import MultiPoly
from .incidence import IncidenceSystem, KernelConfiguration

__all__ = ["LagrangeSystem", "build_lagrange", "build_full_lagrange", "p_r_count", "verify_full_vs_simplified"]


def p_r_count(m: int, r: int) -> int:
    return (m - r) * (m + r + 1) // 2


@dataclass
class LagrangeSystem:
    polys: list[MultiPoly]
    vars_x: list[str]
    vars_y: list[str]
    vars_z: list[str]
    p_r: int
    iota: KernelConfiguration

    @property
    def roster(self) -> list[str]:
        return self.vars_x + self.vars_y + self.vars_z

    def blocks(self) -> dict[str, list[MultiPoly]]:
        """The three bilinear groups: (x,y), (y,z), (x,z)."""
        n1 = len(self.vars_x) - 1
        return {
            "xy": self.polys[:self.p_r],
            "yz": self.polys[self.p_r:self.p_r + n1],
            "xz": self.polys[self.p_r + n1:],
        }


def build_lagrange(sys: IncidenceSystem) -> LagrangeSystem:
    """Simplified Lagrange system: the p_r entries g (Y_iota pinned), and
    z^T (jac g without its x1 column) = 0 with z = (1, z2, ..., z_{p_r})."""
    if not sys.g_entries:
        raise ValueError("incidence system has not been reduced")
    xs = list(sys.vars_x)
    ys = sys.free_y
    pr = len(sys.g_entries)
    zs = [f"z{k}" for k in range(2, pr + 1)]
    roster = xs + ys + zs
    pinned = [v for v in sys.vars_y if v not in ys]
    g = [q.drop_vars(pinned).extend(roster) for _, _, q in sys.g_entries]
    zpolys = [MultiPoly.constant(1, roster)] + [MultiPoly.var(z, roster) for z in zs]
    eqs = list(g)
    for v in xs[1:] + ys:
        s = MultiPoly({}, roster)
        for zk, gk in zip(zpolys, g):
            d = gk.diff(v)
            if d:
                s = s + zk * d
        eqs.append(s)
    return LagrangeSystem(eqs, xs, ys, zs, pr, sys.config)


def build_full_lagrange(sys: IncidenceSystem, seed: int = 0) -> tuple[list[MultiPoly], list[str]]:
    """(f, z^T jac f - (e1^T, 0)) over all of f, with multipliers z1..z_{c+e}.

    When f carries redundancies (e > 0) the multipliers are not unique; e
    seeded affine slices on z restore finiteness without changing the
    x-projection.
    """
    xs, ys = list(sys.vars_x), list(sys.vars_y)
    f = sys.polys_full
    zs = [f"w{k}" for k in range(1, len(f) + 1)]
    roster = xs + ys + zs
    f = [q.extend(roster) for q in f]
    zv = [MultiPoly.var(z, roster) for z in zs]
    eqs = list(f)
    for idx, v in enumerate(xs + ys):
        s = MultiPoly({}, roster)
        for zk, fk in zip(zv, f):
            d = fk.diff(v)
            if d:
                s = s + zk * d
        if idx == 0:
            s = s - 1
        eqs.append(s)
    rng = random.Random(seed)
    for _ in range(sys.e):
        coeffs = [Fraction(rng.randint(-50, 50)) for _ in zs]
        s = MultiPoly({}, roster)
        for c, z in zip(coeffs, zv):
            s = s + z * c
        eqs.append(s - rng.randint(-50, 50))
    return eqs, roster


def verify_full_vs_simplified(sys: IncidenceSystem, lag: LagrangeSystem, seed: int = 0) -> bool:
    """True when the full and the simplified Lagrange systems have the same
    set of x-coordinates (both finite; compared with one shared linear form)."""
    from .errors import CollisionError, NotShape
    from .ratpar import build_algebra, lambda_candidates, shape_parametrization, union

    full, froster = build_full_lagrange(sys, seed)
    xs = list(sys.vars_x)
    alg_f = build_algebra(full, froster, xs, seed=seed)
    alg_s = build_algebra(lag.polys, lag.vars_y + lag.vars_z + lag.vars_x, xs, seed=seed)
    if alg_f is None or alg_s is None:
        return alg_f is None and alg_s is None
    for lam in lambda_candidates(len(xs), seed):
        try:
            a = shape_parametrization(alg_f, lam)
            b = shape_parametrization(alg_s, lam)
            both = union(a, b)
        except NotShape:
            continue
        except CollisionError:
            return False
        return a.degree == b.degree == both.degree
    raise NotShape("no common separating form found")
