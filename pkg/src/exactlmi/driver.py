"""Top-level algorithms: the genericity-gated low-rank sampler, its recursion
over fibers of the first coordinate, and the rank loop deciding feasibility."""
from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .arith import MultiPoly
from .bounds import aggregate_bound, theta
from .errors import CollisionError, GenericityError, InternalError, NotShape
from .feasibility import (
    Empty,
    LinearPoint,
    Witness,
    accepted_roots,
    char_poly_coeffs,
    rank_at,
    solve_linear,
)
from .groebner import ResourceLimits
from .incidence import (
    Regularity,
    build_incidence,
    det_poly,
    is_reg,
    kernel_configurations,
    reduce_redundancies,
    x_names,
)
from .lagrange import build_lagrange
from .pencil import SymmetricPencil, fix_first_variable, random_invertible, sub_seed
from .realroots import isolate_roots
from .ratpar import (
    RankCondition,
    RationalParametrization,
    build_algebra,
    image,
    lambda_candidates,
    lift,
    parametrize_ideal,
    project,
    shape_parametrization,
    shift,
    union,
)

__all__ = ["SolverConfig", "SolveLog", "Observation", "low_rank_sym", "low_rank_sym_rec", "solve_lmi", "minors_ideal"]

log = logging.getLogger(__name__)


@dataclass
class SolverConfig:
    seed: int = 0
    coeff_bound: int = 100
    skip_isreg: bool = False
    max_seconds: float | None = None
    max_basis: int | None = None
    max_bits: int | None = None
    lambda_redraws: int = 4
    verbose: bool = False

    def __post_init__(self):
        if self.coeff_bound < 1:
            raise ValueError("coeff_bound must be at least 1")

    def limits(self) -> ResourceLimits:
        return ResourceLimits.with_seconds(self.max_seconds, max_basis=self.max_basis,
                                           max_bits=self.max_bits)


@dataclass(frozen=True)
class Observation:
    stage: str
    rp: RationalParametrization
    pencil: SymmetricPencil
    r: int


@dataclass
class SolveLog:
    """Degrees and timings collected along a run."""

    degrees: list[dict] = field(default_factory=list)
    levels: list[dict] = field(default_factory=list)
    events: list[dict] = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def time(self, key: str, seconds: float) -> None:
        self.timings[key] = self.timings.get(key, 0.0) + seconds

    def event(self, kind: str, **info) -> None:
        self.events.append({"event": kind, **info})
        log.info("%s %s", kind, info)

    def observe(self, rp: RationalParametrization, stage: str, pencil: SymmetricPencil,
                r: int) -> RationalParametrization:
        """Record a parametrization with the pencil whose (r+1)-minors vanish on it."""
        self.checks.append(Observation(stage, rp, pencil, r))
        return rp


def minors_ideal(p: SymmetricPencil, size: int) -> list[MultiPoly]:
    """All size x size minors of A(x), one per unordered pair of index sets."""
    xs = x_names(p.n)
    A = p.matrix_polys(xs)
    out = []
    for rows in combinations(range(p.m), size):
        for cols in combinations(range(p.m), size):
            if cols < rows:
                continue
            d = det_poly([[A[i][j] for j in cols] for i in rows])
            if d:
                out.append(d)
    return out


def _below_threshold(m: int, n: int, r: int) -> bool:
    return n < comb(m - r + 1, 2)


def low_rank_sym(p: SymmetricPencil, r: int, cfg: SolverConfig | None = None,
                 slog: SolveLog | None = None, limits: ResourceLimits | None = None) -> RationalParametrization:
    """Sample points on the real locus where rank A(x) <= r."""
    cfg = cfg or SolverConfig()
    slog = slog if slog is not None else SolveLog()
    limits = limits or cfg.limits()
    if not 0 <= r <= p.m - 1:
        raise ValueError(f"need 0 <= r <= m-1, got r={r}")
    if _below_threshold(p.m, p.n, r):
        t0 = time.perf_counter()
        minors = minors_ideal(p, r + 1)
        if not minors:
            raise GenericityError("Dimension", context={"r": r, "depth": 0})
        try:
            rp = parametrize_ideal(minors, x_names(p.n), sub_seed(cfg.seed, "step1", r), limits,
                                   cfg.lambda_redraws)
        except GenericityError as exc:
            exc.context.update({"r": r, "depth": 0})
            raise
        slog.time("step1", time.perf_counter() - t0)
        if not rp.is_empty:
            slog.event("finite-stratum", r=r, degree=rp.degree)
            slog.levels.append({"r": r, "level": 0, "n": p.n, "degree": rp.degree, "source": "stratum"})
        return slog.observe(rp, "step1", p, r)
    if not cfg.skip_isreg:
        t0 = time.perf_counter()
        for iota in kernel_configurations(p.m, r):
            if is_reg(p, iota, r, limits) is Regularity.NOT_REGULAR:
                raise GenericityError("IsReg", context={"r": r, "iota": list(iota.iota), "depth": 0})
        slog.time("isreg", time.perf_counter() - t0)
    return low_rank_sym_rec(p, r, cfg, 0, slog, limits)


def _level(p: SymmetricPencil, r: int, cfg: SolverConfig, depth: int, attempt: int,
           slog: SolveLog, limits: ResourceLimits) -> RationalParametrization:
    """Union over all kernel configurations of the critical points, for one M."""
    M = random_invertible(p.n, sub_seed(cfg.seed, "M", r, depth, attempt), cfg.coeff_bound)
    Minv = M.inverse()
    cond = RankCondition(p, M, r)
    pm = cond.composed()
    algebras = []
    for iota in kernel_configurations(p.m, r):
        t0 = time.perf_counter()
        lag = build_lagrange(reduce_redundancies(build_incidence(p, M, iota)))
        roster = lag.vars_y + lag.vars_z + lag.vars_x
        try:
            alg = build_algebra(lag.polys, roster, lag.vars_x, cond,
                                sub_seed(cfg.seed, "filter", r, depth, attempt), limits)
        except GenericityError as exc:
            exc.context.update({"r": r, "iota": list(iota.iota), "depth": depth})
            raise
        slog.time("ratpar", time.perf_counter() - t0)
        algebras.append((iota, alg))
    lam_seed = sub_seed(cfg.seed, "lambda", r, depth, attempt)
    for lam in lambda_candidates(p.n, lam_seed, cfg.lambda_redraws, cfg.coeff_bound):
        try:
            q = RationalParametrization.empty(p.n)
            records = []
            for iota, alg in algebras:
                t0 = time.perf_counter()
                if alg is None:
                    raw = RationalParametrization.empty(p.n)
                else:
                    raw = slog.observe(shape_parametrization(alg, lam, limits), "ratpar", pm, r)
                proj = slog.observe(project(raw, cond, sub_seed(cfg.seed, "project", r, depth)), "project", pm, r)
                q_iota = slog.observe(image(proj, Minv), "image", p, r)
                q = slog.observe(union(q, q_iota), "union", p, r)
                slog.time("shape", time.perf_counter() - t0)
                records.append({
                    "r": r, "iota": list(iota.iota), "level": depth, "n": p.n,
                    "degree": q_iota.degree, "theta": theta(p.m, p.n, r),
                    "quotient_dimension": 0 if alg is None else alg.dimension,
                    "sub_rank_removed": 0 if alg is None else alg.removed,
                })
        except (NotShape, CollisionError) as exc:
            slog.event("lambda-redraw", r=r, depth=depth, reason=type(exc).__name__)
            continue
        slog.degrees.extend(records)
        slog.levels.append({"r": r, "level": depth, "n": p.n, "degree": q.degree, "source": "critical"})
        return q
    raise GenericityError("Shape", "the input is not generic: no separating linear form found",
                          {"r": r, "depth": depth})


def low_rank_sym_rec(p: SymmetricPencil, r: int, cfg: SolverConfig | None = None, depth: int = 0,
                     slog: SolveLog | None = None, limits: ResourceLimits | None = None) -> RationalParametrization:
    cfg = cfg or SolverConfig()
    slog = slog if slog is not None else SolveLog()
    limits = limits or cfg.limits()
    if _below_threshold(p.m, p.n, r):
        return RationalParametrization.empty(p.n)
    for attempt in range(2):
        try:
            q = _level(p, r, cfg, depth, attempt, slog, limits)
            break
        except GenericityError as exc:
            if attempt == 1 or exc.stage not in ("Dimension", "Shape"):
                raise
            slog.event("retry", r=r, depth=depth, stage=exc.stage)
    rng = random.Random(sub_seed(cfg.seed, "fiber", r, depth))
    t = Fraction(rng.randint(-cfg.coeff_bound, cfg.coeff_bound))
    sub = low_rank_sym_rec(fix_first_variable(p, t), r, cfg, depth + 1, slog, limits)
    lifted = slog.observe(lift(sub, t), "lift", p, r)
    for k in range(16):
        try:
            return slog.observe(union(q, lifted), "union", p, r)
        except CollisionError:
            # move the lifted parameter values off the shared ones
            slog.event("collision-shift", r=r, depth=depth, shift=k + 1)
            lifted = shift(lifted, 1)
    raise GenericityError("Projection", "the input is not generic: persistent parameter collision",
                          {"r": r, "depth": depth})


def solve_lmi(p: SymmetricPencil, cfg: SolverConfig | None = None, slog: SolveLog | None = None):
    """Empty, LinearPoint or Witness; the witness rank is the loop index."""
    cfg = cfg or SolverConfig()
    slog = slog if slog is not None else SolveLog()
    limits = cfg.limits()
    x = solve_linear(p)
    if x is not None:
        return LinearPoint(x)
    cp = None
    for r in range(1, p.m):
        t0 = time.perf_counter()
        q = low_rank_sym(p, r, cfg, slog, limits)
        slog.time(f"lowrank_r{r}", time.perf_counter() - t0)
        if q.is_empty:
            continue
        t0 = time.perf_counter()
        cp = cp or char_poly_coeffs(p)
        acc = accepted_roots(p, q, cp)
        slog.time("checklmi", time.perf_counter() - t0)
        if acc:
            root = acc[0][0]
            rank = rank_at(p, q, root, cp)
            if rank != r:
                raise InternalError(f"witness rank {rank} differs from the loop index {r}")
            return Witness(q, root, rank, tuple(a for a, _ in acc), len(isolate_roots(q.qn1)))
    return Empty()


def total_bound(p: SymmetricPencil, r: int) -> int:
    return aggregate_bound(p.m, p.n, r)
