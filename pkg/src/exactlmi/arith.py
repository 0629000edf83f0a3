"""Exact rational arithmetic: univariate and sparse multivariate polynomials,
rational matrices.

Rationals are :class:`fractions.Fraction`.  Nothing in this module touches
floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

__all__ = [
    "parse_rational",
    "format_rational",
    "UniPoly",
    "MultiPoly",
    "QMatrix",
    "uni_gcd",
    "squarefree_part",
    "rref",
    "eval_multipoly",
    "poly_arith",
]

MAX_EXPONENT = 2**15 - 1


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (decimal integers, optional leading minus)."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")

    def _int(tok: str) -> int:
        body = tok[1:] if tok.startswith("-") else tok
        if not body.isdigit() or not body.isascii():
            raise ValueError(f"not a rational: {text!r}")
        return int(tok)

    p = _int(num)
    if not sep:
        return Fraction(p)
    q = _int(den)
    if q <= 0:
        raise ValueError(f"denominator must be positive: {text!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# univariate


class UniPoly:
    """Dense univariate polynomial, coefficients in ascending degree order."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "t"):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var

    # construction helpers
    @classmethod
    def constant(cls, c, var: str = "t") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def x(cls, var: str = "t") -> "UniPoly":
        return cls([0, 1], var)

    @classmethod
    def from_roots(cls, roots, var: str = "t") -> "UniPoly":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-Fraction(r), 1], var)
        return p

    # basic properties
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mon = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            cs = format_rational(c)
            if mon and c == 1:
                terms.append(mon)
            elif mon and c == -1:
                terms.append("-" + mon)
            else:
                terms.append(cs + ("*" + mon if mon else ""))
        return "UniPoly(" + " + ".join(terms).replace("+ -", "- ") + ")"

    # arithmetic
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = Fraction(other)
            return UniPoly([c * a for a in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise ValueError("negative power")
        out = UniPoly([1], self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lcb = other.lc
        if len(rem) - 1 < db:
            return UniPoly([], self.var), UniPoly(rem, self.var)
        quo = [Fraction(0)] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lcb
            quo[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] -= c * bc[j]
        return UniPoly(quo, self.var), UniPoly(rem[:db], self.var)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, UniPoly) else UniPoly([], self.var)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.lc
        return UniPoly([c / lc for c in self.coeffs], self.var)

    def content(self) -> Fraction:
        """Positive rational content: ``self / content`` is a primitive integer polynomial."""
        if self.is_zero():
            return Fraction(0)
        den = lcm(*(c.denominator for c in self.coeffs))
        g = 0
        for c in self.coeffs:
            g = gcd(g, c.numerator * (den // c.denominator))
        return Fraction(g, den)

    def primitive(self) -> "UniPoly":
        """Integer coefficients, content 1, positive leading coefficient."""
        if self.is_zero():
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return UniPoly([a / c for a in self.coeffs], self.var)

    def int_coeffs(self) -> list[int]:
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError("polynomial has non-integer coefficients")
            out.append(c.numerator)
        return out

    def scale_var(self, a) -> "UniPoly":
        """p(a*t)."""
        a = Fraction(a)
        out, pw = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * pw)
            pw *= a
        return UniPoly(out, self.var)


def uni_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd; ``gcd(p, 0) = monic(p)`` and ``gcd(0, 0) = 0``."""
    a, b = p.primitive(), q.primitive()
    while b:
        a, b = b, (a % b).primitive()
    return a.monic()


def uni_xgcd(p: UniPoly, q: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Return (g, s, u) with s*p + u*q = g, g monic."""
    r0, r1 = p, q
    s0, s1 = UniPoly([1], p.var), UniPoly([], p.var)
    t0, t1 = UniPoly([], p.var), UniPoly([1], p.var)
    while r1:
        quo, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.lc
    return r0 * (1 / lc), s0 * (1 / lc), t0 * (1 / lc)


def uni_invmod(a: UniPoly, m: UniPoly) -> UniPoly:
    """Inverse of ``a`` modulo ``m``; raises if they are not coprime."""
    g, s, _ = uni_xgcd(a % m, m)
    if g.degree != 0:
        raise ArithmeticError("not invertible modulo")
    return s % m


def squarefree_part(p: UniPoly) -> UniPoly:
    """Product of the distinct irreducible factors of ``p``, primitive over Z."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree == 0:
        return UniPoly([1], p.var)
    g = uni_gcd(p, p.derivative())
    return p.exact_div(g).primitive()


# ---------------------------------------------------------------------------
# multivariate


class MultiPoly:
    """Sparse polynomial over Q: exponent tuple -> nonzero Fraction."""

    __slots__ = ("terms", "vars")

    def __init__(self, terms: Mapping[tuple, object] | None = None, vars: Sequence[str] = ()):
        self.vars: tuple[str, ...] = tuple(vars)
        nv = len(self.vars)
        clean: dict[tuple, Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != nv:
                raise ValueError("exponent vector length does not match variable roster")
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                if any(k < 0 or k > MAX_EXPONENT for k in e):
                    raise OverflowError("exponent out of range")
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict, vars: tuple) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.vars = vars
        return obj

    @classmethod
    def constant(cls, c, vars: Sequence[str]) -> "MultiPoly":
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def var(cls, name: str, vars: Sequence[str]) -> "MultiPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls({tuple(e): 1}, vars)

    @classmethod
    def linear(cls, coeffs: Sequence, vars: Sequence[str], const=0) -> "MultiPoly":
        vars = tuple(vars)
        n = len(vars)
        terms: dict = {(0,) * n: Fraction(const)}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = Fraction(c)
        return cls(terms, vars)

    # properties
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, names: Iterable[str]) -> int:
        idx = [self.vars.index(v) for v in names]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def used_vars(self) -> set[str]:
        out = set()
        for e in self.terms:
            for v, k in zip(self.vars, e):
                if k:
                    out.add(v)
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            if self.vars == other.vars:
                return self.terms == other.terms
            a, b = _unify(self, other)
            return a.terms == b.terms
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                return not self.terms
            return self.terms == {(0,) * len(self.vars): other}
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), [-k for k in e])):
            c = self.terms[e]
            mon = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            if not mon:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{format_rational(c)}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    # roster handling
    def extend(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over a roster containing all of this polynomial's variables."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = []
        for v in self.vars:
            try:
                pos.append(vars.index(v))
            except ValueError:
                if any(e[len(pos)] for e in self.terms):
                    raise ValueError(f"variable {v!r} missing from target roster")
                pos.append(None)
        n = len(vars)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for k, p in zip(e, pos):
                if p is not None:
                    ne[p] += k
            out[tuple(ne)] = c
        return MultiPoly._raw(out, vars)

    # arithmetic
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.constant(other, self.vars)

    def __add__(self, other) -> "MultiPoly":
        a, b = _unify(self, self._coerce(other))
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly._raw(out, a.vars)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            if c == 0:
                return MultiPoly._raw({}, self.vars)
            return MultiPoly._raw({e: v * c for e, v in self.terms.items()}, self.vars)
        a, b = _unify(self, other)
        out: dict = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        for e in out:
            if any(k > MAX_EXPONENT for k in e):
                raise OverflowError("exponent out of range")
        return MultiPoly._raw(out, a.vars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        out = MultiPoly.constant(1, self.vars)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = c * k
        return MultiPoly._raw(out, self.vars)

    def __call__(self, point: Sequence) -> Fraction:
        return eval_multipoly(self, point)

    def subs(self, values: Mapping[str, object]) -> "MultiPoly":
        """Substitute rationals or MultiPolys for variables; the roster is kept."""
        res = MultiPoly._raw({}, self.vars)
        idx = {self.vars.index(v): val for v, val in values.items()}
        cache: dict = {}
        for e, c in self.terms.items():
            keep = list(e)
            term = MultiPoly._raw({}, self.vars)
            scal = Fraction(c)
            polyf = None
            for i, val in idx.items():
                k = e[i]
                if not k:
                    continue
                keep[i] = 0
                if isinstance(val, MultiPoly):
                    key = (i, k)
                    if key not in cache:
                        cache[key] = val.extend(self.vars) ** k
                    polyf = cache[key] if polyf is None else polyf * cache[key]
                else:
                    scal *= Fraction(val) ** k
            if scal == 0:
                continue
            term = MultiPoly._raw({tuple(keep): scal}, self.vars)
            if polyf is not None:
                term = term * polyf
            res = res + term
        return res

    def drop_vars(self, names: Iterable[str]) -> "MultiPoly":
        """Remove variables that do not occur."""
        names = set(names)
        keep = [i for i, v in enumerate(self.vars) if v not in names]
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i, v in enumerate(self.vars) if v in names):
                raise ValueError("cannot drop a variable that occurs")
            out[tuple(e[i] for i in keep)] = c
        return MultiPoly._raw(out, tuple(self.vars[i] for i in keep))

    def integer_normalized(self) -> "MultiPoly":
        """Scale to integer coefficients with content 1."""
        if not self.terms:
            return self
        den = lcm(*(c.denominator for c in self.terms.values()))
        g = 0
        for c in self.terms.values():
            g = gcd(g, c.numerator * (den // c.denominator))
        s = Fraction(den, g)
        return MultiPoly._raw({e: c * s for e, c in self.terms.items()}, self.vars)

    def to_univariate(self, name: str) -> UniPoly:
        i = self.vars.index(name)
        coeffs: dict[int, Fraction] = {}
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial is not univariate in " + name)
            coeffs[e[i]] = c
        d = max(coeffs, default=-1)
        return UniPoly([coeffs.get(k, 0) for k in range(d + 1)], name)


def _unify(a: MultiPoly, b: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    if a.vars == b.vars:
        return a, b
    roster = list(a.vars) + [v for v in b.vars if v not in a.vars]
    return a.extend(roster), b.extend(roster)


def poly_arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def eval_multipoly(p: MultiPoly, point: Sequence) -> Fraction:
    if len(point) != len(p.vars):
        raise ValueError(f"expected {len(p.vars)} coordinates, got {len(point)}")
    pt = [Fraction(v) for v in point]
    total = Fraction(0)
    for e, c in p.terms.items():
        t = c
        for v, k in zip(pt, e):
            if k:
                t *= v**k
        total += t
    return total


# ---------------------------------------------------------------------------
# matrices


class QMatrix:
    """Dense rational matrix, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        ents = tuple(e if isinstance(e, Fraction) else Fraction(e) for e in entries)
        if len(ents) != rows * cols:
            raise ValueError("entries length does not match shape")
        self.rows, self.cols, self.entries = rows, cols, ents

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        rows = [list(r) for r in rows]
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), nc, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "QMatrix":
        return cls(r, c, [0] * (r * c))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def tolist(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self.tolist())
        return f"QMatrix([{body}])"

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    T = property(transpose)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return QMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "QMatrix":
        return self.scale(-1)

    def scale(self, c) -> "QMatrix":
        c = Fraction(c)
        return QMatrix(self.rows, self.cols, [c * a for a in self.entries])

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            out = []
            for i in range(self.rows):
                ri = self.row(i)
                for j in range(other.cols):
                    out.append(sum((ri[k] * other[k, j] for k in range(self.cols) if ri[k]), Fraction(0)))
            return QMatrix(self.rows, other.cols, out)
        vec = [Fraction(v) for v in other]
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return [sum((a * b for a, b in zip(self.row(i), vec) if a), Fraction(0)) for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "QMatrix":
        return QMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def rank(self) -> int:
        return len(rref(self)[1])

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return bareiss_det([[x for x in r] for r in self.tolist()])

    def inverse(self) -> "QMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = QMatrix.from_rows([self.row(i) + [1 if i == j else 0 for j in range(n)] for i in range(n)])
        red, piv = rref(aug)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return QMatrix.from_rows([red.row(i)[n:] for i in range(n)])

    def nullspace(self) -> list[list[Fraction]]:
        red, piv = rref(self)
        free = [j for j in range(self.cols) if j not in piv]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for i, p in enumerate(piv):
                v[p] = -red[i, f]
            basis.append(v)
        return basis


def bareiss_det(rows: list[list]) -> Fraction:
    """Fraction-free determinant (Bareiss) after clearing denominators per row."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    m = []
    for r in rows:
        d = lcm(*(Fraction(x).denominator for x in r))
        scale /= d
        m.append([int(Fraction(x) * d) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return scale * sign * m[n - 1][n - 1]


def rref(M: QMatrix) -> tuple[QMatrix, list[int]]:
    """Reduced row-echelon form and pivot columns.

    Elimination runs fraction-free on integer rows; the result is normalized
    to the usual RREF at the end.
    """
    rows = []
    for i in range(M.rows):
        r = M.row(i)
        d = lcm(*(x.denominator for x in r)) if r else 1
        rows.append([int(x * d) for x in r])
    nr, nc = M.rows, M.cols
    pivots: list[int] = []
    lead = 0
    for c in range(nc):
        if lead >= nr:
            break
        p = next((i for i in range(lead, nr) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[lead], rows[p] = rows[p], rows[lead]
        pr = rows[lead]
        g = 0
        for x in pr:
            g = gcd(g, x)
        if g > 1:
            pr = rows[lead] = [x // g for x in pr]
        pc = pr[c]
        for i in range(nr):
            if i != lead and rows[i][c] != 0:
                f = rows[i][c]
                ri = rows[i]
                new = [pc * a - f * b for a, b in zip(ri, pr)]
                g = 0
                for x in new:
                    g = gcd(g, x)
                    if g == 1:
                        break
                if g > 1:
                    new = [x // g for x in new]
                rows[i] = new
        pivots.append(c)
        lead += 1
    out = []
    for i in range(nr):
        if i < len(pivots):
            pc = rows[i][pivots[i]]
            out.extend(Fraction(x, pc) for x in rows[i])
        else:
            out.extend([Fraction(0)] * nc)
    return QMatrix(nr, nc, out), pivots
