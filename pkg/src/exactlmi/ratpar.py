"""Rational parametrizations of finite sets and the set operations used by the
recursion: computing one from a zero-dimensional system, projecting onto the
rank-exact part, changing coordinates, union and lifting."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Callable, Sequence

from gmpy2 import gcd as _gcd, mpq, mpz

from .arith import MultiPoly, QMatrix, UniPoly, squarefree_part, uni_gcd, uni_invmod
from .errors import CollisionError, GenericityError, InternalError, NotShape
from .groebner import (
    GroebnerBasis,
    ResourceLimits,
    apply_sparse,
    buchberger,
    ideal_dimension,
    multiplication_matrices,
    quotient_basis,
)
from .incidence import det_poly
from .lagrange import LagrangeSystem
from .pencil import SymmetricPencil, change_of_variables, sub_seed

__all__ = [
    "RationalParametrization",
    "RankCondition",
    "QuotientAlgebra",
    "build_algebra",
    "shape_parametrization",
    "default_lambda",
    "lambda_candidates",
    "ratpar",
    "parametrize_ideal",
    "project",
    "image",
    "union",
    "lift",
    "shift",
    "compose_numerator",
    "compose_matrix",
    "det_mod",
]


def _one() -> UniPoly:
    return UniPoly([1])


def _mod(p: UniPoly, m: UniPoly) -> UniPoly:
    return p % m if m.degree >= 1 else UniPoly([])


@dataclass(frozen=True)
class RationalParametrization:
    """Points ``x_i = qi[i](t) / q0(t)`` over the roots of ``qn1``.

    ``qn1`` is squarefree, primitive with positive leading coefficient;
    ``q0`` and the ``qi`` are integer polynomials of degree below ``deg qn1``
    with joint content 1.  ``lam`` records the separating form, if any.
    """

    n: int
    q0: UniPoly
    qi: tuple[UniPoly, ...]
    qn1: UniPoly
    lam: tuple[Fraction, ...] | None = None

    @classmethod
    def empty(cls, n: int) -> "RationalParametrization":
        return cls(n, _one(), tuple(UniPoly([]) for _ in range(n)), _one(), None)

    @classmethod
    def from_coordinates(cls, qn1: UniPoly, coords: Sequence[UniPoly],
                         lam: Sequence | None = None) -> "RationalParametrization":
        """Build from ``x_i = coords[i](t)`` modulo ``qn1``, with ``q0 = c * qn1'``."""
        n = len(coords)
        if qn1.is_zero():
            raise ValueError("qn1 must be nonzero")
        qn1 = squarefree_part(qn1)
        if qn1.degree <= 0:
            return cls.empty(n)
        d = qn1.derivative()
        qs = [_mod(p * d, qn1) for p in coords]
        lam_t = None if lam is None else tuple(Fraction(c) for c in lam)
        return _normalized(n, d, qs, qn1, lam_t)

    @property
    def is_empty(self) -> bool:
        return self.qn1.degree <= 0

    @property
    def degree(self) -> int:
        return max(self.qn1.degree, 0)

    def coordinate_functions(self) -> list[UniPoly]:
        """``p_i`` with ``x_i = p_i(t)`` modulo ``qn1``."""
        if self.is_empty:
            return [UniPoly([]) for _ in range(self.n)]
        inv = uni_invmod(self.q0, self.qn1)
        return [_mod(q * inv, self.qn1) for q in self.qi]

    def check_invariants(self) -> None:
        """Raise :class:`InternalError` on any violated normalization invariant."""
        if len(self.qi) != self.n:
            raise InternalError("wrong number of coordinate polynomials")
        if self.qn1.is_zero() or self.qn1.lc <= 0:
            raise InternalError("qn1 must be nonzero with positive leading coefficient")
        polys = [self.qn1, self.q0, *self.qi]
        for p in polys:
            if any(c.denominator != 1 for c in p.coeffs):
                raise InternalError("non-integer coefficient")
        if self.qn1.content() != 1:
            raise InternalError("qn1 is not primitive")
        if self.is_empty:
            if self.qn1 != 1:
                raise InternalError("empty parametrization must have qn1 = 1")
            return
        if squarefree_part(self.qn1).degree != self.qn1.degree:
            raise InternalError("qn1 is not squarefree")
        if uni_gcd(self.qn1, self.q0).degree != 0:
            raise InternalError("gcd(qn1, q0) != 1")
        d = self.qn1.degree
        if any(p.degree >= d for p in [self.q0, *self.qi]):
            raise InternalError("coordinate polynomial degree not below deg qn1")
        g = 0
        for p in [self.q0, *self.qi]:
            for c in p.coeffs:
                g = gcd(g, c.numerator)
        if g != 1:
            raise InternalError("q0..qn do not have joint content 1")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lambda": None if self.lam is None else [_rat(c) for c in self.lam],
            "q0": self.q0.int_coeffs(),
            "qi": [q.int_coeffs() for q in self.qi],
            "qn1": self.qn1.int_coeffs(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RationalParametrization":
        from .arith import parse_rational

        try:
            n = int(obj["n"])
            qi = obj["qi"]
            if len(qi) != n:
                raise ValueError(f"expected {n} coordinate polynomials, got {len(qi)}")
            lam = obj.get("lambda")
            rp = cls(
                n,
                UniPoly([_int(c) for c in obj["q0"]]),
                tuple(UniPoly([_int(c) for c in q]) for q in qi),
                UniPoly([_int(c) for c in obj["qn1"]]),
                None if lam is None else tuple(parse_rational(c) for c in lam),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed parametrization: {exc}") from exc
        try:
            rp.check_invariants()
        except InternalError as exc:
            raise ValueError(f"invalid parametrization: {exc}") from exc
        return rp


def _int(c) -> int:
    if isinstance(c, bool) or not isinstance(c, (int, str)):
        raise ValueError(f"coefficient {c!r} is not an integer")
    return int(c)


def _rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _normalized(n: int, q0: UniPoly, qi: Sequence[UniPoly], qn1: UniPoly,
                lam) -> RationalParametrization:
    """Reduce modulo qn1 and scale q0, qi jointly to coprime integers."""
    qn1 = qn1.primitive()
    if qn1.degree <= 0:
        return RationalParametrization.empty(n)
    q0 = _mod(q0, qn1)
    qi = [_mod(q, qn1) for q in qi]
    polys = [q0, *qi]
    den = 1
    for p in polys:
        for c in p.coeffs:
            den = lcm(den, c.denominator)
    g = 0
    for p in polys:
        for c in p.coeffs:
            g = gcd(g, (c * den).numerator)
    scale = Fraction(den, g)
    q0, *qi = [p * scale for p in polys]
    return RationalParametrization(n, q0, tuple(qi), qn1, lam)


@dataclass(frozen=True)
class RankCondition:
    """Keep only points where ``rank A(M x) = r``."""

    pencil: SymmetricPencil
    M: QMatrix | None
    r: int

    def composed(self) -> SymmetricPencil:
        return self.pencil if self.M is None else change_of_variables(self.pencil, self.M)


# ---------------------------------------------------------------------------
# linear algebra on the quotient


class _Echelon:
    """Incremental exact elimination that remembers how each stored vector
    combines the inserted ones."""

    def __init__(self):
        self.rows: list[tuple[int, list, list]] = []  # (pivot, vector, combination)
        self.count = 0

    def reduce(self, u: list) -> tuple[list, list]:
        u = list(u)
        combo = [mpq(0)] * self.count
        for p, w, c in self.rows:
            f = u[p]
            if f:
                for i, x in enumerate(w):
                    if x:
                        u[i] -= f * x
                for j, x in enumerate(c):
                    if x:
                        combo[j] += f * x
        return u, combo

    def insert(self, u: list) -> list | None:
        """Insert u as the next vector; return its expression in the earlier
        ones when it is dependent (and then insert nothing)."""
        res, combo = self.reduce(u)
        p = next((i for i, x in enumerate(res) if x), None)
        if p is None:
            return combo
        inv = 1 / res[p]
        vec = [x * inv for x in res]
        c = [-x * inv for x in combo] + [inv]
        self.count += 1
        self.rows = [(q, w, cw + [mpq(0)]) for q, w, cw in self.rows]
        self.rows.append((p, vec, c))
        return None


def _krylov(apply: Callable[[list], list], start: list, limits: ResourceLimits | None):
    """Krylov vectors of ``start`` and the monic minimal polynomial (ascending)."""
    ech = _Echelon()
    vecs = []
    v = start
    while True:
        dep = ech.insert(v)
        if dep is not None:
            return vecs, [-c for c in dep] + [mpq(1)], ech
        vecs.append(v)
        v = apply(v)
        if limits is not None:
            limits.check_time()


def _to_uni(cs: Sequence) -> UniPoly:
    return UniPoly([Fraction(int(c.numerator), int(c.denominator)) for c in cs])


def _combine(vecs: list[list], coeffs: Sequence[Fraction], D: int) -> list:
    out = [mpq(0)] * D
    for v, c in zip(vecs, coeffs):
        if c:
            cq = mpq(c.numerator, c.denominator)
            for i, x in enumerate(v):
                if x:
                    out[i] += cq * x
    return out


def _int_columns(cols: list[dict]) -> tuple[list[dict], mpz]:
    """Sparse rational columns as integer columns over one denominator."""
    den = mpz(1)
    for c in cols:
        for x in c.values():
            den = _lcm(den, x.denominator)
    return [{i: x.numerator * (den // x.denominator) for i, x in c.items()} for c in cols], den


def _lcm(a: mpz, b: mpz) -> mpz:
    return a * b // _gcd(a, b) if a != b else a


def _to_ints(vec: list) -> tuple[list, mpz]:
    den = mpz(1)
    for x in vec:
        if x:
            den = _lcm(den, x.denominator)
    return [x.numerator * (den // x.denominator) for x in vec], den


def _from_ints(ints: list, den: mpz) -> list:
    return [mpq(x, den) for x in ints]


def _tidy(ints: list, den: mpz) -> tuple[list, mpz]:
    g = den
    for x in ints:
        if g == 1:
            break
        if x:
            g = _gcd(g, x)
    if g != 1:
        ints = [x // g for x in ints]
        den = den // g
    return ints, den


@dataclass
class QuotientAlgebra:
    """Multiplication by the x variables on a finite-dimensional quotient,
    together with an idempotent ``unit`` cutting out the points kept.

    Each multiplication map is an integer matrix over one denominator, so
    products run in integer arithmetic.
    """

    xvars: tuple[str, ...]
    imats: list[tuple[list[dict], mpz]]
    unit: list
    dimension: int
    removed: int = 0
    stats: dict = field(default_factory=dict)

    def _apply_int(self, i: int, ints: list, den: mpz) -> tuple[list, mpz]:
        cols, L = self.imats[i]
        out = [mpz(0)] * self.dimension
        for j, x in enumerate(ints):
            if x:
                for k, c in cols[j].items():
                    out[k] += c * x
        return _tidy(out, den * L)

    def apply_x(self, i: int, vec: list) -> list:
        return _from_ints(*self._apply_int(i, *_to_ints(vec)))

    def apply_poly(self, p: MultiPoly, vec: list) -> list:
        """Multiplication by a polynomial in the x variables."""
        cache: dict[tuple, tuple] = {(0,) * len(self.xvars): _to_ints(vec)}

        def img(e: tuple) -> tuple:
            hit = cache.get(e)
            if hit is not None:
                return hit
            i = next(k for k, a in enumerate(e) if a)
            prev = img(e[:i] + (e[i] - 1,) + e[i + 1:])
            out = cache[e] = self._apply_int(i, *prev)
            return out

        parts = []
        den = mpz(1)
        for e, c in p.extend(self.xvars).terms.items():
            ints, d = img(e)
            d = d * c.denominator
            parts.append((ints, d, c.numerator))
            den = _lcm(den, d)
        out = [mpz(0)] * self.dimension
        for ints, d, num in parts:
            f = num * (den // d)
            for k, x in enumerate(ints):
                if x:
                    out[k] += f * x
        return _from_ints(*_tidy(out, den))

    def apply_linear(self, lam: Sequence[Fraction], vec: list) -> list:
        ints, den = _to_ints(vec)
        parts = []
        L = mpz(1)
        for i, c in enumerate(lam):
            if c:
                w, d = self._apply_int(i, ints, den)
                d = d * c.denominator
                parts.append((w, d, c.numerator))
                L = _lcm(L, d)
        out = [mpz(0)] * self.dimension
        for w, d, num in parts:
            f = num * (L // d)
            for k, x in enumerate(w):
                if x:
                    out[k] += f * x
        return _from_ints(*_tidy(out, L))


def _rank_witness(cond: RankCondition, xvars: Sequence[str], seed: int) -> MultiPoly:
    """det(U A(Mx) V) for seeded integer U (r x m), V (m x r): a random
    combination of the r x r minors."""
    B = cond.composed()
    m, r = B.m, cond.r
    rng = random.Random(sub_seed(seed, "rank-witness"))
    U = [[rng.randint(-100, 100) for _ in range(m)] for _ in range(r)]
    V = [[rng.randint(-100, 100) for _ in range(r)] for _ in range(m)]
    A = B.matrix_polys(xvars)
    zero = MultiPoly({}, tuple(xvars))
    AV = [[sum((A[i][k] * V[k][j] for k in range(m) if V[k][j]), zero) for j in range(r)] for i in range(m)]
    UAV = [[sum((AV[k][j] * U[i][k] for k in range(m) if U[i][k]), zero) for j in range(r)] for i in range(r)]
    return det_poly(UAV)


def build_algebra(polys: Sequence[MultiPoly], roster: Sequence[str], xvars: Sequence[str],
                  cond: RankCondition | None = None, seed: int = 0,
                  limits: ResourceLimits | None = None,
                  radical: bool = False) -> QuotientAlgebra | None:
    """Quotient algebra of a zero-dimensional system seen through its x variables.

    Returns None for the unit ideal; raises GenericityError("Dimension") when
    the ideal is not zero-dimensional.  With ``cond`` the points where a
    random combination of the r x r minors vanishes are split off by an
    idempotent.  With ``radical`` the ideal is first replaced by its radical
    (all roster variables must then be x variables).
    """
    roster = tuple(roster)
    xvars = tuple(xvars)
    gens = [p.extend(roster) for p in polys]
    gb = buchberger(gens, "grevlex", roster, limits)
    if gb.is_unit():
        return None
    if ideal_dimension(gb) != 0:
        raise GenericityError("Dimension", "the input is not generic: the critical-point ideal is not zero-dimensional")
    if radical:
        gb = _radical(gb, limits)
    qb = quotient_basis(gb)
    idx = [roster.index(v) for v in xvars]
    _, mats = multiplication_matrices(gb, qb, limits, idx)
    D = qb.dimension
    one = [mpq(0)] * D
    one[0] = mpq(1)
    alg = QuotientAlgebra(xvars, [_int_columns(c) for c in mats], one, D, 0, {"quotient_dimension": D, "basis_size": len(gb.generators)})
    if cond is not None and cond.r >= 1:
        h = _rank_witness(cond, xvars, seed)
        vecs, mu, _ = _krylov(lambda v: alg.apply_poly(h, v), one, limits)
        a = next(i for i, c in enumerate(mu) if c)
        if a:
            nu = _to_uni(mu[a:])
            if nu.degree == 0:
                alg.unit = [mpq(0)] * D
            else:
                s_a = UniPoly([0] * a + [1])
                E = s_a * uni_invmod(s_a, nu)
                alg.unit = _combine(vecs, E.coeffs, D)
        alg.removed = a
        alg.stats["rank_witness_nilpotency"] = a
    return alg


def _radical(gb: GroebnerBasis, limits: ResourceLimits | None) -> GroebnerBasis:
    """Add the squarefree parts of the variables' minimal polynomials."""
    qb = quotient_basis(gb)
    _, mats = multiplication_matrices(gb, qb, limits)
    D = qb.dimension
    one = [mpq(0)] * D
    one[0] = mpq(1)
    extra = []
    for v, name in enumerate(gb.vars):
        _, mu, _ = _krylov(lambda w, v=v: apply_sparse(mats[v], w), one, limits)
        p = _to_uni(mu)
        sf = squarefree_part(p)
        if sf.degree < p.degree:
            terms = {}
            for k, c in enumerate(sf.coeffs):
                if c:
                    e = [0] * len(gb.vars)
                    e[v] = k
                    terms[tuple(e)] = c
            extra.append(MultiPoly(terms, gb.vars))
    if not extra:
        return gb
    return buchberger(list(gb.generators) + extra, gb.order, gb.vars, limits)


def shape_parametrization(alg: QuotientAlgebra | None, lam: Sequence,
                          limits: ResourceLimits | None = None) -> RationalParametrization:
    """Parametrization of the kept points by ``t = lam . x``; NotShape when
    ``lam`` does not separate them or they are not reduced."""
    if alg is None:
        raise ValueError("no algebra for the unit ideal")
    n = len(alg.xvars)
    lam = tuple(Fraction(c) for c in lam)
    if not any(alg.unit):
        return RationalParametrization.empty(n)
    vecs, mu, ech = _krylov(lambda v: alg.apply_linear(lam, v), alg.unit, limits)
    d = len(vecs)
    coords = []
    for i in range(n):
        res, combo = ech.reduce(alg.apply_x(i, alg.unit))
        if any(res):
            raise NotShape("linear form is not separating on the kept points")
        coords.append(_to_uni(combo))
    q = _to_uni(mu)
    if d and squarefree_part(q).degree < q.degree:
        raise NotShape("kept points are not reduced")
    return RationalParametrization.from_coordinates(q, coords, lam)


def default_lambda(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(i) for i in range(1, n + 1))


def lambda_candidates(n: int, seed: int, redraws: int = 4, bound: int = 100):
    """The default form, then seeded integer redraws."""
    yield default_lambda(n)
    for k in range(redraws):
        rng = random.Random(sub_seed(seed, "lambda", k))
        lam = [Fraction(rng.randint(-bound, bound)) for _ in range(n)]
        if not any(lam):
            lam[0] = Fraction(1)
        yield tuple(lam)


def ratpar(lag: LagrangeSystem, seed: int = 0, cond: RankCondition | None = None,
           limits: ResourceLimits | None = None, lam: Sequence | None = None,
           redraws: int = 4) -> RationalParametrization:
    """Parametrization of the x-projection of the critical points.

    The roster puts y before z before x (index 0 is the largest grevlex
    variable).  When ``lam`` is given only that form is tried.
    """
    n = len(lag.vars_x)
    roster = list(lag.vars_y) + list(lag.vars_z) + list(lag.vars_x)
    alg = build_algebra(lag.polys, roster, lag.vars_x, cond, seed, limits)
    if alg is None:
        return RationalParametrization.empty(n)
    forms = [tuple(lam)] if lam is not None else lambda_candidates(n, seed, redraws)
    for form in forms:
        try:
            return shape_parametrization(alg, form, limits)
        except NotShape:
            continue
    raise GenericityError("Shape", "the input is not generic: no separating linear form found")


def parametrize_ideal(polys: Sequence[MultiPoly], xvars: Sequence[str], seed: int = 0,
                      limits: ResourceLimits | None = None,
                      redraws: int = 4) -> RationalParametrization:
    """Parametrization of the zero set of a zero-dimensional ideal in x alone."""
    n = len(xvars)
    alg = build_algebra(polys, xvars, xvars, None, seed, limits, radical=True)
    if alg is None:
        return RationalParametrization.empty(n)
    for form in lambda_candidates(n, seed, redraws):
        try:
            return shape_parametrization(alg, form, limits)
        except NotShape:
            continue
    raise GenericityError("Shape", "the input is not generic: no separating linear form found")


# ---------------------------------------------------------------------------
# composition with polynomials


def compose_numerator(rp: RationalParametrization, p: MultiPoly,
                      degree: int | None = None) -> tuple[UniPoly, int]:
    """``(N, d)`` with ``p(q/q0) = N(t) / q0(t)^d`` on the roots of qn1.

    ``d`` is the total degree of ``p`` unless given; N is reduced mod qn1.
    """
    if len(p.vars) != rp.n:
        raise ValueError("polynomial roster does not match the parametrization")
    d = p.total_degree() if degree is None else degree
    d = max(d, 0)
    if rp.is_empty or p.is_zero():
        return UniPoly([]), d
    m = rp.qn1
    pw0 = [UniPoly([1])]
    for _ in range(d):
        pw0.append(_mod(pw0[-1] * rp.q0, m))
    pws = [[UniPoly([1])] for _ in range(rp.n)]

    def power(i: int, k: int) -> UniPoly:
        lst = pws[i]
        while len(lst) <= k:
            lst.append(_mod(lst[-1] * rp.qi[i], m))
        return lst[k]

    acc = UniPoly([])
    for e, c in p.terms.items():
        term = pw0[d - sum(e)] * c
        for i, k in enumerate(e):
            if k:
                term = _mod(term * power(i, k), m)
        acc = acc + term
    return _mod(acc, m), d


def compose_matrix(rp: RationalParametrization, B: SymmetricPencil) -> list[list[UniPoly]]:
    """q0 * B(q/q0) entry-wise, reduced mod qn1."""
    m = rp.qn1
    out = []
    for a in range(B.m):
        row = []
        for b in range(B.m):
            acc = rp.q0 * B.mats[0][a, b]
            for j in range(B.n):
                c = B.mats[j + 1][a, b]
                if c:
                    acc = acc + rp.qi[j] * c
            row.append(_mod(acc, m))
        out.append(row)
    return out


def det_mod(mat: list[list[UniPoly]], m: UniPoly) -> UniPoly:
    k = len(mat)
    memo: dict[tuple, UniPoly] = {}

    def rec(row: int, cols: tuple) -> UniPoly:
        if row == k:
            return UniPoly([1])
        hit = memo.get(cols)
        if hit is not None:
            return hit
        acc = UniPoly([])
        for pos, c in enumerate(cols):
            e = mat[row][c]
            if e:
                term = _mod(e * rec(row + 1, cols[:pos] + cols[pos + 1:]), m)
                acc = acc + term if pos % 2 == 0 else acc - term
        memo[cols] = acc
        return acc

    return rec(0, tuple(range(k)))


# ---------------------------------------------------------------------------
# set operations


def project(rp: RationalParametrization, cond: RankCondition, seed: int = 0) -> RationalParametrization:
    """Remove the roots where ``rank A(M x(t)) < r``.

    A random combination of the r x r minors flags candidate roots through
    its gcd with qn1; every minor is then checked on that factor, so only
    roots where all r x r minors vanish are removed.
    """
    if rp.is_empty or cond.r == 0:
        return rp
    B = cond.composed()
    if B.n != rp.n:
        raise ValueError("rank condition does not match the parametrization")
    r = cond.r
    E = compose_matrix(rp, B)
    rng = random.Random(sub_seed(seed, "project"))
    U = [[rng.randint(-100, 100) for _ in range(B.m)] for _ in range(r)]
    V = [[rng.randint(-100, 100) for _ in range(r)] for _ in range(B.m)]
    m = rp.qn1
    EV = [[_mod(sum((E[i][k] * V[k][j] for k in range(B.m) if V[k][j]), UniPoly([])), m)
           for j in range(r)] for i in range(B.m)]
    UEV = [[_mod(sum((EV[k][j] * U[i][k] for k in range(B.m) if U[i][k]), UniPoly([])), m)
            for j in range(r)] for i in range(r)]
    g = uni_gcd(m, det_mod(UEV, m))
    if g.degree <= 0:
        return rp
    for rows in combinations(range(B.m), r):
        for cols in combinations(range(B.m), r):
            if cols < rows:
                continue  # symmetric: minor(I, J) = minor(J, I)
            sub = [[_mod(E[i][j], g) for j in cols] for i in rows]
            g = uni_gcd(g, det_mod(sub, g))
            if g.degree <= 0:
                return rp
    keep = m.exact_div(g)
    return _normalized(rp.n, rp.q0, rp.qi, keep, rp.lam)


def image(rp: RationalParametrization, M: QMatrix) -> RationalParametrization:
    """Parametrization of ``{x : M x in Z}``."""
    if (M.rows, M.cols) != (rp.n, rp.n):
        raise ValueError("matrix size does not match the parametrization")
    Minv = M.inverse()
    if rp.is_empty:
        return RationalParametrization.empty(rp.n)
    qi = []
    for i in range(rp.n):
        acc = UniPoly([])
        for j in range(rp.n):
            c = Minv[i, j]
            if c:
                acc = acc + rp.qi[j] * c
        qi.append(acc)
    return _normalized(rp.n, rp.q0, qi, rp.qn1, None)


def union(a: RationalParametrization, b: RationalParametrization) -> RationalParametrization:
    """Parametrization of the union; CollisionError when a shared root of the
    two eliminating polynomials carries different points."""
    if a.n != b.n:
        raise ValueError("parametrizations live in different dimensions")
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    g = uni_gcd(a.qn1, b.qn1)
    if g.degree > 0:
        for ai, bi in zip(a.qi, b.qi):
            if _mod(ai * b.q0 - bi * a.q0, g):
                raise CollisionError("two points share the same parameter value")
    lam = a.lam if a.lam == b.lam else None
    rest = b.qn1.exact_div(g).primitive() if g.degree > 0 else b.qn1
    if rest.degree <= 0:
        return RationalParametrization(a.n, a.q0, a.qi, a.qn1, lam)
    # rest and a.qn1 are coprime, so each summand vanishes on the other's
    # roots and no modular inverse is needed
    q0 = a.q0 * rest + b.q0 * a.qn1
    qi = [x * rest + y * a.qn1 for x, y in zip(a.qi, b.qi)]
    return _normalized(a.n, q0, qi, a.qn1 * rest, lam)


def lift(rp: RationalParametrization, t0) -> RationalParametrization:
    """Prepend the constant coordinate ``t0``."""
    t0 = Fraction(t0)
    if rp.is_empty:
        return RationalParametrization.empty(rp.n + 1)
    return _normalized(rp.n + 1, rp.q0, [rp.q0 * t0, *rp.qi], rp.qn1, None)


def shift(rp: RationalParametrization, c) -> RationalParametrization:
    """Same points, parameter ``t + c``; the separating form is dropped."""
    c = Fraction(c)
    if rp.is_empty or c == 0:
        return rp
    back = UniPoly([-c, 1])  # t -> t - c
    return _normalized(rp.n, rp.q0(back), [q(back) for q in rp.qi], rp.qn1(back), None)
