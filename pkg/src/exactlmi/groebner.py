"""Groebner bases over Q, ideal dimension, and change of ordering to a
shape-lemma lex basis for zero-dimensional ideals.

Internally monomials are packed into Python ints whose integer order is the
monomial order, so that multiplying monomials is integer addition.  Basis
elements carry primitive integer coefficients (``gmpy2.mpz``) and reduction
is fraction-free; rationals only reappear at the public boundary.
"""
from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from gmpy2 import divexact, gcd, mpq, mpz

from .arith import MultiPoly, UniPoly, uni_gcd

__all__ = [
    "Timeout",
    "NotShape",
    "ResourceLimits",
    "GroebnerBasis",
    "QuotientBasis",
    "ShapeBasis",
    "buchberger",
    "ideal_dimension",
    "quotient_basis",
    "multiplication_matrices",
    "fglm_to_lex",
    "shape_from_algebra",
    "reduce_poly",
    "ideal_contains",
]

_W = 16
_MASK = (1 << _W) - 1
_LIMIT = 1 << (_W - 1)
_CONTENT_EVERY = 24


class Timeout(Exception):
    """A configured resource ceiling was exceeded."""


class NotShape(Exception):
    """The linear form does not put the ideal in shape position."""


@dataclass
class ResourceLimits:
    max_basis: int | None = None
    max_bits: int | None = None
    deadline: float | None = None  # absolute time.monotonic() value

    @classmethod
    def with_seconds(cls, seconds: float | None, **kw) -> "ResourceLimits":
        dl = None if seconds is None else time.monotonic() + seconds
        return cls(deadline=dl, **kw)

    def check_time(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise Timeout("wall-time ceiling exceeded")


def _fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class _Order:
    """Monomial packing for one order and roster size."""

    def __init__(self, name: str, nvars: int):
        if name not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {name!r}")
        self.name = name
        self.n = nvars
        self.guard = sum(1 << (_W * i + _W - 1) for i in range(nvars))
        self._dec: dict[int, tuple[tuple[int, ...], int]] = {}

    def encode(self, e: Sequence[int]) -> int:
        n = self.n
        if any(k >= _LIMIT for k in e):
            raise OverflowError("exponent exceeds packed field width")
        if self.name == "lex":
            key = 0
            for k in e:
                key = (key << _W) | k
            return key
        d = sum(e)
        if d >= _LIMIT:
            raise OverflowError("degree exceeds packed field width")
        key = d
        for i in range(n - 1, 0, -1):
            key = (key << _W) | (d - e[i])
        return key

    def decode(self, key: int) -> tuple[tuple[int, ...], int]:
        """Return (exponent tuple, divisibility-packed int)."""
        hit = self._dec.get(key)
        if hit is not None:
            return hit
        n = self.n
        if self.name == "lex":
            e = [0] * n
            k = key
            for i in range(n - 1, -1, -1):
                e[i] = k & _MASK
                k >>= _W
        else:
            fields = []
            k = key
            for _ in range(n - 1):
                fields.append(k & _MASK)
                k >>= _W
            d = k
            # fields[0] is d - e[1], fields[n-2] is d - e[n-1]
            e = [0] * n
            for i in range(1, n):
                e[i] = d - fields[i - 1]
            e[0] = d - sum(e[1:])
        et = tuple(e)
        dp = 0
        for i in range(n - 1, -1, -1):
            dp = (dp << _W) | et[i]
        res = (et, dp)
        self._dec[key] = res
        return res

    def divides(self, da: int, db: int) -> bool:
        g = self.guard
        return ((db | g) - da) & g == g


class _GPoly:
    __slots__ = ("lm", "lc", "terms", "dlm")

    def __init__(self, terms: list, dlm: int):
        self.terms = terms  # [(key, mpz)] sorted by key descending, primitive, lc > 0
        self.lm, self.lc = terms[0]
        self.dlm = dlm


@dataclass
class GroebnerBasis:
    generators: list[MultiPoly]
    order: str
    vars: tuple[str, ...]

    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].total_degree() == 0

    def leading_exponents(self) -> list[tuple[int, ...]]:
        od = _Order(self.order, len(self.vars))
        return [max(g.terms, key=od.encode) for g in self.generators]


@dataclass
class QuotientBasis:
    monomials: list[tuple[int, ...]]

    @property
    def dimension(self) -> int:
        return len(self.monomials)


# ---------------------------------------------------------------------------
# conversion


def _denominator_lcm(p: MultiPoly) -> int:
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // int(gcd(den, c.denominator))
    return den


def _to_internal(p: MultiPoly, od: _Order) -> dict:
    den = _denominator_lcm(p)
    return {od.encode(e): mpz(c.numerator * (den // c.denominator)) for e, c in p.terms.items()}


def _content(values) -> mpz:
    g = mpz(0)
    for v in values:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _make_gpoly(d: dict, od: _Order) -> _GPoly | None:
    if not d:
        return None
    terms = sorted(d.items(), reverse=True)
    g = _content(c for _, c in terms)
    if terms[0][1] < 0:
        g = -g
    if g != 1:
        terms = [(k, divexact(c, g)) for k, c in terms]
    return _GPoly(terms, od.decode(terms[0][0])[1])


def _from_internal(g: _GPoly, od: _Order, vars: tuple) -> MultiPoly:
    lc = int(g.lc)
    return MultiPoly._raw({od.decode(k)[0]: Fraction(int(c), lc) for k, c in g.terms}, vars)


# ---------------------------------------------------------------------------
# reduction


def _normal_form(f: dict, basis: list[_GPoly], od: _Order, limits: ResourceLimits | None = None,
                 full: bool = True) -> tuple[dict, mpq]:
    """Fraction-free reduction of ``f`` (consumed) modulo ``basis``.

    Returns ``(rem, s)`` with ``rem = s * NF(f)``; ``rem`` has integer
    coefficients and ``s`` is a positive rational.
    """
    if not f:
        return {}, mpq(1)
    lms = [(g.dlm, g) for g in basis]
    divides = od.divides
    decode = od.decode
    heap = [-k for k in f]
    heapq.heapify(heap)
    rem: dict = {}
    num, den = mpz(1), mpz(1)
    pop, push = heapq.heappop, heapq.heappush
    steps = 0
    while heap:
        k = -pop(heap)
        c = f.pop(k, None)
        if c is None:
            continue
        dk = decode(k)[1]
        red = None
        for dg, g in lms:
            if divides(dg, dk):
                red = g
                break
        if red is None:
            rem[k] = c
            if not full:
                rem.update(f)
                f.clear()
                break
            continue
        a = red.lc
        if a != 1:
            h = gcd(a, c)
            if h != 1:
                a = divexact(a, h)
                c = divexact(c, h)
            if a != 1:
                f = {kk: v * a for kk, v in f.items()}
                if rem:
                    rem = {kk: v * a for kk, v in rem.items()}
                num *= a
        sh = k - red.lm
        it = iter(red.terms)
        next(it)
        for gk, gc in it:
            m = gk + sh
            v = f.get(m)
            if v is None:
                f[m] = -c * gc
                push(heap, -m)
            else:
                v -= c * gc
                if v:
                    f[m] = v
                else:
                    del f[m]
        steps += 1
        if steps % _CONTENT_EVERY == 0:
            g = _content(list(f.values()) + list(rem.values()))
            if g > 1:
                f = {kk: divexact(v, g) for kk, v in f.items()}
                rem = {kk: divexact(v, g) for kk, v in rem.items()}
                den *= g
            if limits is not None:
                limits.check_time()
    if rem:
        g = _content(rem.values())
        if g > 1:
            rem = {kk: divexact(v, g) for kk, v in rem.items()}
            den *= g
    return rem, mpq(num, den)


def _check_bits(g: _GPoly, limits: ResourceLimits | None) -> None:
    if limits is None or limits.max_bits is None:
        return
    for _, c in g.terms:
        if c.bit_length() > limits.max_bits:
            raise Timeout("coefficient bit-length ceiling exceeded")


def _reduce_tail(g: _GPoly, others: list[_GPoly], od: _Order,
                 limits: ResourceLimits | None) -> _GPoly:
    rem, s = _normal_form(dict(g.terms[1:]), others, od, limits)
    # s*g = (s*lc) lm + rem; clear the denominator of s
    rem = {k: v * s.denominator for k, v in rem.items()}
    rem[g.lm] = g.lc * s.numerator
    return _make_gpoly(rem, od)


# ---------------------------------------------------------------------------
# Buchberger


def _lcm_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _disjoint(a: tuple, b: tuple) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _divides_t(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def buchberger(polys: Sequence[MultiPoly], order: str = "grevlex",
               vars: Sequence[str] | None = None,
               limits: ResourceLimits | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``polys``.

    Pairs are pruned with the Gebauer-Moeller criteria and selected by the
    normal strategy (smallest lcm first, ties by pair index).  The working
    basis is kept tail-reduced, which keeps intermediate coefficients in
    check much better than reducing only at the end.
    """
    polys = list(polys)
    if vars is None:
        roster: list[str] = []
        for p in polys:
            for v in p.vars:
                if v not in roster:
                    roster.append(v)
        vars = roster
    vars = tuple(vars)
    polys = [p.extend(vars) for p in polys]
    od = _Order(order, len(vars))
    if limits is not None:
        limits.check_time()

    start = []
    for p in polys:
        g = _make_gpoly(_to_internal(p, od), od)
        if g is not None:
            start.append(g)
    if not start:
        return GroebnerBasis([], order, vars)
    start.sort(key=lambda g: (g.lm, len(g.terms)))

    basis: list[_GPoly] = []
    lm_exp: list[tuple] = []
    active: set[int] = set()
    pairs: dict[tuple[int, int], tuple[int, tuple]] = {}
    unit = GroebnerBasis([MultiPoly.constant(1, vars)], order, vars)

    def update(ih: int) -> None:
        nonlocal active
        mh = lm_exp[ih]
        C = sorted(active)
        D: list[int] = []
        # keep (h, g) unless its lcm is a proper multiple of another candidate's
        for pos, ig in enumerate(C):
            mg = lm_exp[ig]
            lhg = _lcm_exp(mh, mg)
            if _disjoint(mh, mg):
                D.append(ig)
                continue
            dominated = any(_divides_t(_lcm_exp(mh, lm_exp[jg]), lhg) for jg in C[pos + 1:])
            if not dominated:
                dominated = any(_divides_t(_lcm_exp(mh, lm_exp[jg]), lhg) for jg in D)
            if not dominated:
                D.append(ig)
        E = [ig for ig in D if not _disjoint(mh, lm_exp[ig])]
        # chain criterion on the old pairs
        for (i1, i2), (_, l12) in list(pairs.items()):
            if _divides_t(mh, l12) and _lcm_exp(lm_exp[i1], mh) != l12 and _lcm_exp(lm_exp[i2], mh) != l12:
                del pairs[(i1, i2)]
        for ig in E:
            l = _lcm_exp(mh, lm_exp[ig])
            pairs[(ig, ih)] = (od.encode(l), l)
        active = {ig for ig in active if not _divides_t(mh, lm_exp[ig])}
        active.add(ih)

    def add(g: _GPoly) -> bool:
        basis.append(g)
        lm_exp.append(od.decode(g.lm)[0])
        if limits is not None and limits.max_basis is not None and len(basis) > limits.max_basis:
            raise Timeout("basis-size ceiling exceeded")
        _check_bits(g, limits)
        if not any(lm_exp[-1]):
            return True
        update(len(basis) - 1)
        return False

    for g in start:
        if active:
            rem, _ = _normal_form(dict(g.terms), [basis[a] for a in sorted(active)], od, limits)
            g = _make_gpoly(rem, od)
            if g is None:
                continue
        if add(g):
            return unit

    while pairs:
        if limits is not None:
            limits.check_time()
        key = min(pairs, key=lambda p: (pairs[p][0], p))
        lkey, _ = pairs.pop(key)
        i, j = key
        gi, gj = basis[i], basis[j]
        h = gcd(gi.lc, gj.lc)
        ai, aj = divexact(gj.lc, h), divexact(gi.lc, h)
        s: dict = {}
        sh_i = lkey - gi.lm
        sh_j = lkey - gj.lm
        for k, c in gi.terms[1:]:
            s[k + sh_i] = c * ai
        for k, c in gj.terms[1:]:
            m = k + sh_j
            v = s.get(m)
            if v is None:
                s[m] = -c * aj
            else:
                v -= c * aj
                if v:
                    s[m] = v
                else:
                    del s[m]
        act = sorted(active)
        rem, _ = _normal_form(s, [basis[a] for a in act], od, limits)
        if not rem:
            continue
        if add(_make_gpoly(rem, od)):
            return unit
        dh = basis[-1].dlm
        for a in act:
            if a in active and any(od.divides(dh, od.decode(k)[1]) for k, _ in basis[a].terms[1:]):
                basis[a] = _reduce_tail(basis[a], [basis[b] for b in sorted(active) if b != a], od, limits)

    final = _interreduce([basis[a] for a in sorted(active)], od, limits)
    final.sort(key=lambda g: g.lm, reverse=True)
    return GroebnerBasis([_from_internal(g, od, vars) for g in final], order, vars)


def _interreduce(G: list[_GPoly], od: _Order, limits: ResourceLimits | None) -> list[_GPoly]:
    keep = []
    for i, g in enumerate(G):
        if not any(j != i and od.divides(h.dlm, g.dlm) and (h.lm != g.lm or j < i)
                   for j, h in enumerate(G)):
            keep.append(g)
    return [_reduce_tail(g, keep[:i] + keep[i + 1:], od, limits) for i, g in enumerate(keep)]


# ---------------------------------------------------------------------------
# queries on a basis


def _internal_basis(gb: GroebnerBasis) -> tuple[_Order, list[_GPoly]]:
    od = _Order(gb.order, len(gb.vars))
    return od, [_make_gpoly(_to_internal(g.extend(gb.vars), od), od) for g in gb.generators]


def reduce_poly(p: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    """Normal form of ``p`` modulo a Groebner basis."""
    od, G = _internal_basis(gb)
    p = p.extend(gb.vars)
    rem, s = _normal_form(_to_internal(p, od), G, od)
    factor = Fraction(1, _denominator_lcm(p)) / _fraction(s)
    return MultiPoly._raw({od.decode(k)[0]: factor * int(c) for k, c in rem.items()}, gb.vars)


def ideal_contains(gb: GroebnerBasis, p: MultiPoly) -> bool:
    od, G = _internal_basis(gb)
    rem, _ = _normal_form(_to_internal(p.extend(gb.vars), od), G, od)
    return not rem


def ideal_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of the ideal; -1 for the unit ideal."""
    if not gb.generators or all(g.is_zero() for g in gb.generators):
        return len(gb.vars)
    if gb.is_unit():
        return -1
    n = len(gb.vars)
    supports = [frozenset(i for i, k in enumerate(e) if k) for e in gb.leading_exponents()]
    best = 0

    # largest S with no leading-monomial support contained in S
    def search(i: int, chosen: list[int]) -> None:
        nonlocal best
        if len(chosen) + (n - i) <= best:
            return
        if i == n:
            best = max(best, len(chosen))
            return
        cand = chosen + [i]
        cs = set(cand)
        if not any(s <= cs for s in supports):
            search(i + 1, cand)
        search(i + 1, chosen)

    search(0, [])
    return best


def quotient_basis(gb: GroebnerBasis, limit: int = 1_000_000) -> QuotientBasis:
    """Standard monomials of a zero-dimensional ideal, in increasing order."""
    if ideal_dimension(gb) != 0:
        raise ValueError("ideal is not zero-dimensional")
    od = _Order(gb.order, len(gb.vars))
    lms = gb.leading_exponents()
    n = len(gb.vars)
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for e in frontier:
            for i in range(n):
                ne = e[:i] + (e[i] + 1,) + e[i + 1:]
                if ne in seen or any(_divides_t(l, ne) for l in lms):
                    continue
                seen.add(ne)
                nxt.append(ne)
                if len(seen) > limit:
                    raise Timeout("quotient too large")
        frontier = nxt
    return QuotientBasis(sorted(seen, key=od.encode))


def multiplication_matrices(gb: GroebnerBasis, qb: QuotientBasis | None = None,
                            limits: ResourceLimits | None = None,
                            variables: Sequence[int] | None = None):
    """Multiplication-by-variable maps on the quotient, as sparse columns.

    ``mats[v][j]`` maps row index to the ``mpq`` coefficient of ``x_v * b_j``
    in the standard-monomial basis ``b``.  With ``variables`` only those
    roster positions are built and ``mats`` follows that order.
    """
    if qb is None:
        qb = quotient_basis(gb)
    od, G = _internal_basis(gb)
    index = {od.encode(e): i for i, e in enumerate(qb.monomials)}
    n = len(gb.vars)
    mats = []
    for v in (range(n) if variables is None else variables):
        unit = [0] * n
        unit[v] = 1
        ukey = od.encode(unit)
        cols = []
        for e in qb.monomials:
            key = od.encode(e) + ukey
            if key in index:
                cols.append({index[key]: mpq(1)})
                continue
            rem, s = _normal_form({key: mpz(1)}, G, od, limits)
            inv = 1 / s
            cols.append({index[k]: c * inv for k, c in rem.items()})
        mats.append(cols)
    return qb, mats


# ---------------------------------------------------------------------------
# change of ordering


@dataclass
class ShapeBasis:
    """Lex basis in shape position: ``q(t) = 0`` and ``v_i = p_i(t)``."""

    vars: tuple[str, ...]
    lam: list[Fraction]
    q: UniPoly
    coords: list[UniPoly] = field(default_factory=list)

    def as_groebner(self, tvar: str = "t") -> GroebnerBasis:
        roster = self.vars + (tvar,)
        n = len(roster)
        gens = []
        for i, p in enumerate(self.coords):
            e = [0] * n
            e[i] = 1
            terms = {tuple(e): Fraction(1)}
            for k, c in enumerate(p.coeffs):
                if c:
                    te = [0] * n
                    te[-1] = k
                    terms[tuple(te)] = terms.get(tuple(te), 0) - c
            gens.append(MultiPoly(terms, roster))
        qt = {}
        for k, c in enumerate(self.q.monic().coeffs):
            te = [0] * n
            te[-1] = k
            qt[tuple(te)] = c
        gens.append(MultiPoly(qt, roster))
        return GroebnerBasis(gens, "lex", roster)


def apply_sparse(cols: list[dict], vec: list) -> list:
    out = [mpq(0)] * len(vec)
    for j, x in enumerate(vec):
        if x:
            for i, c in cols[j].items():
                out[i] += c * x
    return out


def solve_square(columns: list[list], targets: list[list]) -> list[list] | None:
    """Solve ``V c = b`` for each target, ``V`` given by its columns; None if singular."""
    D = len(columns)
    rows = [[columns[j][i] for j in range(D)] + [t[i] for t in targets] for i in range(D)]
    for c in range(D):
        p = next((i for i in range(c, D) if rows[i][c] != 0), None)
        if p is None:
            return None
        rows[c], rows[p] = rows[p], rows[c]
        inv = 1 / rows[c][c]
        rc = rows[c] = [x * inv for x in rows[c]]
        for i in range(D):
            if i != c:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [a - f * b for a, b in zip(rows[i], rc)]
    return [[rows[i][D + t] for i in range(D)] for t in range(len(targets))]


def fglm_to_lex(gb: GroebnerBasis, lam: Sequence, limits: ResourceLimits | None = None) -> ShapeBasis:
    """Lex basis of ``gb``'s ideal extended by ``t - lam . vars`` in shape position.

    Raises :class:`NotShape` when ``lam`` does not separate the zeros or the
    ideal is not in shape position for it.
    """
    lam = [Fraction(c) for c in lam]
    if len(lam) != len(gb.vars):
        raise ValueError("linear form length does not match roster")
    if gb.is_unit():
        return ShapeBasis(gb.vars, lam, UniPoly([1]), [UniPoly([]) for _ in gb.vars])
    qb, mats = multiplication_matrices(gb, limits=limits)
    D = qb.dimension
    one = [mpq(0)] * D
    one[0] = mpq(1)  # the standard monomial 1 is the smallest
    coords_img = [apply_sparse(mats[v], one) for v in range(len(gb.vars))]
    return shape_from_algebra(gb.vars, lam, mats, one, coords_img, limits)


def shape_from_algebra(vars, lam: Sequence[Fraction], mats: list[list[dict]], unit: list,
                       coords_img: list[list], limits: ResourceLimits | None = None) -> ShapeBasis:
    """Shape basis of a finite-dimensional algebra given by commuting sparse
    matrices, its unit vector and the images of the coordinates."""
    D = len(unit)
    lq = [mpq(c.numerator, c.denominator) for c in lam]

    def apply_lam(vec):
        out = [mpq(0)] * D
        for v, c in enumerate(lq):
            if c:
                w = apply_sparse(mats[v], vec)
                for i in range(D):
                    out[i] += c * w[i]
        return out

    powers = [list(unit)]
    for _ in range(D):
        powers.append(apply_lam(powers[-1]))
        if limits is not None:
            limits.check_time()
    sols = solve_square(powers[:D], [powers[D]] + coords_img)
    if sols is None:
        raise NotShape("linear form is not separating or the ideal is not in shape position")
    q = UniPoly([-_fraction(c) for c in sols[0]] + [1])
    if uni_gcd(q, q.derivative()).degree > 0:
        raise NotShape("the ideal is not radical")
    coords = [UniPoly([_fraction(x) for x in c]) for c in sols[1:]]
    return ShapeBasis(tuple(vars), list(lam), q, coords)
