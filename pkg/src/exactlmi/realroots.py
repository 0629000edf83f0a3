"""Real root isolation (Descartes bisection) and exact sign determination at
real algebraic numbers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import UniPoly, squarefree_part, uni_gcd

__all__ = [
    "RealAlgebraicNumber",
    "isolate_roots",
    "sign_at",
    "refine",
    "interval_eval",
    "approximate_ratio",
    "decimal_string",
]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _int_poly(p: UniPoly) -> list[int]:
    return p.primitive().int_coeffs()


def _var_count(cs: Sequence[int]) -> int:
    v, last = 0, 0
    for c in cs:
        if c:
            s = 1 if c > 0 else -1
            if last and s != last:
                v += 1
            last = s
    return v


def _taylor_shift1(cs: list[int]) -> list[int]:
    """Coefficients of p(x + 1)."""
    a = list(cs)
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += a[j + 1]
    return a


def _descartes_01(cs: list[int]) -> int:
    """Sign variations bounding the roots of p in the open interval (0, 1)."""
    return _var_count(_taylor_shift1(cs[::-1]))


def _halve(cs: list[int]) -> list[int]:
    """2^d p(x/2) for the left half of (0, 1)."""
    d = len(cs) - 1
    return [c << (d - i) for i, c in enumerate(cs)]


def _affine_int(p: UniPoly, lo: Fraction, hi: Fraction) -> list[int]:
    """Integer multiple of p(lo + (hi - lo) x)."""
    w = hi - lo
    out = [Fraction(0)] * max(len(p.coeffs), 1)
    # Horner in the polynomial ring
    for c in reversed(p.coeffs):
        nxt = [Fraction(0)] * len(out)
        for i, a in enumerate(out):
            if a:
                nxt[i] += a * lo
                if i + 1 < len(nxt):
                    nxt[i + 1] += a * w
        nxt[0] += c
        out = nxt
    return UniPoly(out).primitive().int_coeffs() if any(out) else []


def descartes_count(p: UniPoly, lo: Fraction, hi: Fraction) -> int:
    """Descartes bound on the number of roots of ``p`` in the open interval (lo, hi)."""
    cs = _affine_int(p, Fraction(lo), Fraction(hi))
    return _descartes_01(cs) if cs else 0


@dataclass(frozen=True)
class RealAlgebraicNumber:
    """The unique root of ``poly`` in ``(lo, hi)``, or the rational ``lo`` when ``lo == hi``.

    ``poly`` is squarefree with integer coefficients; for open intervals it
    does not vanish at either endpoint.
    """

    poly: UniPoly
    lo: Fraction
    hi: Fraction

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        if self.is_rational:
            return float(self.lo)
        scale = max(abs(self.lo), abs(self.hi), Fraction(1))
        return float(refine(self, scale / 2 ** 60).midpoint())


def _isolate_01(cs: list[int]) -> list[tuple[int, int, bool]]:
    """Roots of a squarefree integer polynomial in (0, 1) as (c, k, exact):
    exact roots are c/2^k, the others lie in (c/2^k, (c+1)/2^k)."""
    out = []
    stack = [(0, 0, cs)]
    while stack:
        c, k, P = stack.pop()
        if P[0] == 0:
            # root at the left endpoint, seen from the right half of the parent
            out.append((c, k, True))
            P = P[1:]
        v = _descartes_01(P)
        if v == 0:
            continue
        if v == 1:
            out.append((c, k, False))
            continue
        left = _halve(P)
        right = _taylor_shift1(left)
        stack.append((2 * c + 1, k + 1, right))
        stack.append((2 * c, k + 1, left))
    return out


def _root_bound_pow2(cs: list[int]) -> int:
    """Exponent e with every root modulus strictly below 2^e."""
    lc = abs(cs[-1])
    m = max((abs(c) for c in cs[:-1]), default=0)
    bound = Fraction(m, lc) + 1
    e = 0
    while Fraction(2) ** e <= bound:
        e += 1
    return e


def isolate_roots(p: UniPoly) -> list[RealAlgebraicNumber]:
    """Disjoint isolating intervals for the distinct real roots, ascending."""
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    sf = squarefree_part(p)
    if sf.degree <= 0:
        return []
    cs = sf.int_coeffs()
    roots: list[tuple[Fraction, Fraction]] = []
    if cs[0] == 0:
        roots.append((Fraction(0), Fraction(0)))
        cs = cs[1:]
    if len(cs) > 1:
        e = _root_bound_pow2(cs)
        scale = 1 << e
        for sgn in (1, -1):
            # q(x) = p(sgn * 2^e * x) has the wanted roots in (0, 1)
            q = [c * (sgn * scale) ** i for i, c in enumerate(cs)]
            for c, k, exact in _isolate_01(q):
                a = Fraction(sgn * scale * c, 1 << k)
                b = Fraction(sgn * scale * (c + 1), 1 << k)
                if exact:
                    roots.append((a, a))
                else:
                    roots.append((min(a, b), max(a, b)))
    out = [_normalize(RealAlgebraicNumber(sf, lo, hi)) for lo, hi in roots]
    out.sort(key=lambda r: (r.lo, r.hi))
    return out


def _normalize(a: RealAlgebraicNumber) -> RealAlgebraicNumber:
    """Move endpoints off roots of the defining polynomial."""
    p, lo, hi = a.poly, a.lo, a.hi
    if lo == hi:
        return a
    while p(lo) == 0 or p(hi) == 0:
        mid = (lo + hi) / 2
        if p(mid) == 0:
            return RealAlgebraicNumber(p, mid, mid)
        # exactly one root inside: the parity of Descartes' count decides the half
        if descartes_count(p, lo, mid) % 2 == 1:
            hi = mid
        else:
            lo = mid
    return RealAlgebraicNumber(p, lo, hi)


def _bisect(a: RealAlgebraicNumber) -> RealAlgebraicNumber:
    p, lo, hi = a.poly, a.lo, a.hi
    mid = (lo + hi) / 2
    sm = _sign(p(mid))
    if sm == 0:
        return RealAlgebraicNumber(p, mid, mid)
    if sm == _sign(p(lo)):
        return RealAlgebraicNumber(p, mid, hi)
    return RealAlgebraicNumber(p, lo, mid)


def refine(alpha: RealAlgebraicNumber, width) -> RealAlgebraicNumber:
    """Same root, interval width at most ``width``."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    a = alpha
    while a.width > width:
        a = _bisect(a)
    return a


def interval_eval(p: UniPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """An enclosure of p over [lo, hi] (Horner in interval arithmetic)."""
    a, b = Fraction(0), Fraction(0)
    for c in reversed(p.coeffs):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


def _contains_root(g: UniPoly, alpha: RealAlgebraicNumber) -> bool:
    if g.degree <= 0:
        return False
    if alpha.is_rational:
        return g(alpha.lo) == 0
    # g divides the squarefree defining polynomial: at most one simple root inside
    return _sign(g(alpha.lo)) * _sign(g(alpha.hi)) < 0


def sign_at(p: UniPoly, alpha: RealAlgebraicNumber) -> int:
    """Exact sign of p(alpha)."""
    if p.is_zero():
        return 0
    if alpha.is_rational:
        return _sign(p(alpha.lo))
    if p.degree == 0:
        return _sign(p.lc)
    if _contains_root(uni_gcd(p, alpha.poly), alpha):
        return 0
    a = alpha
    while True:
        lo, hi = interval_eval(p, a.lo, a.hi)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        a = _bisect(a)
        if a.is_rational:
            return _sign(p(a.lo))


def approximate_ratio(num: UniPoly, den: UniPoly, alpha: RealAlgebraicNumber,
                      width) -> tuple[Fraction, Fraction]:
    """An interval of width <= ``width`` around num(alpha)/den(alpha); den(alpha) != 0."""
    width = Fraction(width)
    a = alpha
    while True:
        if a.is_rational:
            v = num(a.lo) / den(a.lo)
            return v, v
        nl, nh = interval_eval(num, a.lo, a.hi)
        dl, dh = interval_eval(den, a.lo, a.hi)
        if dl > 0 or dh < 0:
            qs = (nl / dl, nl / dh, nh / dl, nh / dh)
            lo, hi = min(qs), max(qs)
            if hi - lo <= width:
                return lo, hi
        a = _bisect(a)


def decimal_string(lo: Fraction, hi: Fraction, digits: int) -> str:
    """Round the midpoint of an enclosure to ``digits`` decimals."""
    mid = (lo + hi) / 2
    scaled = round(mid * 10 ** digits)
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + s
    return f"{sign}{s[:-digits]}.{s[-digits:]}"
