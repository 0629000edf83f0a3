"""Symmetric linear pencils A(x) = A0 + x1 A1 + ... + xn An over Q."""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import MultiPoly, QMatrix, format_rational, parse_rational, rref

__all__ = [
    "SymmetricPencil",
    "RankStratumQuery",
    "sub_seed",
    "pencil_eval",
    "change_of_variables",
    "fix_first_variable",
    "random_pencil",
    "random_invertible",
    "load_pencil",
    "dump_pencil",
]


@dataclass(frozen=True)
class SymmetricPencil:
    m: int
    n: int
    mats: tuple[QMatrix, ...]

    def __post_init__(self):
        mats = tuple(self.mats)
        object.__setattr__(self, "mats", mats)
        if len(mats) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} matrices, got {len(mats)}")
        for k, A in enumerate(mats):
            if (A.rows, A.cols) != (self.m, self.m):
                raise ValueError(f"matrix {k} is not {self.m}x{self.m}")
            if not A.is_symmetric():
                raise ValueError(f"matrix {k} is not symmetric")

    @classmethod
    def from_lists(cls, mats: Sequence[Sequence[Sequence]]) -> "SymmetricPencil":
        qs = [QMatrix.from_rows(M) for M in mats]
        return cls(qs[0].rows, len(qs) - 1, tuple(qs))

    def entry_poly(self, i: int, j: int, vars: Sequence[str]) -> MultiPoly:
        """Entry (i, j) of A(x) as an affine polynomial in the first n of ``vars``."""
        vars = tuple(vars)
        nv = len(vars)
        terms = {(0,) * nv: self.mats[0][i, j]}
        for k in range(self.n):
            c = self.mats[k + 1][i, j]
            if c:
                e = [0] * nv
                e[k] = 1
                terms[tuple(e)] = c
        return MultiPoly(terms, vars)

    def matrix_polys(self, vars: Sequence[str]) -> list[list[MultiPoly]]:
        return [[self.entry_poly(i, j, vars) for j in range(self.m)] for i in range(self.m)]


@dataclass(frozen=True)
class RankStratumQuery:
    pencil: SymmetricPencil
    r: int

    def __post_init__(self):
        if not 0 <= self.r <= self.pencil.m - 1:
            raise ValueError("rank bound must satisfy 0 <= r <= m-1")


def sub_seed(seed: int, *tags) -> int:
    """Derive a 64-bit sub-seed from a root seed and a tuple of tags."""
    h = hashlib.sha256(repr((int(seed),) + tuple(tags)).encode()).digest()
    return int.from_bytes(h[:8], "little")


def pencil_eval(p: SymmetricPencil, x: Sequence) -> QMatrix:
    if len(x) != p.n:
        raise ValueError(f"expected {p.n} coordinates, got {len(x)}")
    out = list(p.mats[0].entries)
    for xi, A in zip(x, p.mats[1:]):
        xi = Fraction(xi)
        if xi:
            out = [a + xi * b for a, b in zip(out, A.entries)]
    return QMatrix(p.m, p.m, out)


def change_of_variables(p: SymmetricPencil, M: QMatrix) -> SymmetricPencil:
    """Pencil B with B(x) = A(M x)."""
    n = p.n
    if (M.rows, M.cols) != (n, n):
        raise ValueError("change of variables must be n x n")
    if len(rref(M)[1]) != n:
        raise ValueError("change of variables is singular")
    mats = [p.mats[0]]
    for j in range(n):
        ent = [Fraction(0)] * (p.m * p.m)
        for i in range(n):
            c = M[i, j]
            if c:
                ent = [a + c * b for a, b in zip(ent, p.mats[i + 1].entries)]
        mats.append(QMatrix(p.m, p.m, ent))
    return SymmetricPencil(p.m, n, tuple(mats))


def fix_first_variable(p: SymmetricPencil, t) -> SymmetricPencil:
    if p.n < 1:
        raise ValueError("pencil has no variable to fix")
    A0 = p.mats[0] + p.mats[1].scale(t)
    return SymmetricPencil(p.m, p.n - 1, (A0,) + p.mats[2:])


def _rand_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_pencil(m: int, n: int, seed: int, bound: int = 100, integer: bool = False) -> SymmetricPencil:
    """Seeded random symmetric pencil; entries num/den with |num|, den <= bound."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = random.Random(sub_seed(seed, "pencil", m, n, bound, integer))
    mats = []
    for _ in range(n + 1):
        rows = [[Fraction(0)] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                v = Fraction(rng.randint(-bound, bound)) if integer else _rand_rational(rng, bound)
                rows[i][j] = rows[j][i] = v
        mats.append(QMatrix.from_rows(rows))
    return SymmetricPencil(m, n, tuple(mats))


def random_invertible(n: int, seed: int, bound: int = 100) -> QMatrix:
    """Seeded random integer matrix in GL_n(Q); resampled until rref certifies rank n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    attempt = 0
    while True:
        rng = random.Random(sub_seed(seed, "invertible", n, bound, attempt))
        M = QMatrix(n, n, [rng.randint(-bound, bound) for _ in range(n * n)])
        if len(rref(M)[1]) == n:
            return M
        attempt += 1


# ---------------------------------------------------------------------------
# file format


def pencil_to_json(p: SymmetricPencil) -> dict:
    return {
        "m": p.m,
        "n": p.n,
        "matrices": [[[format_rational(x) for x in A.row(i)] for i in range(p.m)] for A in p.mats],
    }


def pencil_from_json(obj: dict) -> SymmetricPencil:
    try:
        m, n, mats = int(obj["m"]), int(obj["n"]), obj["matrices"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed pencil file: {exc}") from None
    if len(mats) != n + 1:
        raise ValueError(f"expected {n + 1} matrices, got {len(mats)}")
    qs = []
    for k, M in enumerate(mats):
        if len(M) != m or any(len(row) != m for row in M):
            raise ValueError(f"matrix {k} is not {m}x{m}")
        qs.append(QMatrix.from_rows([[parse_rational(x) for x in row] for row in M]))
    return SymmetricPencil(m, n, tuple(qs))


def load_pencil(path) -> SymmetricPencil:
    with open(path) as fh:
        return pencil_from_json(json.load(fh))


def dump_pencil(p: SymmetricPencil, path) -> None:
    obj = pencil_to_json(p)
    # one matrix row per line keeps the files readable
    mats = ",\n".join("    [\n" + ",\n".join("      " + json.dumps(row) for row in M) + "\n    ]"
                      for M in obj["matrices"])
    with open(path, "w") as fh:
        fh.write(f'{{\n  "m": {obj["m"]},\n  "n": {obj["n"]},\n  "matrices": [\n{mats}\n  ]\n}}\n')
