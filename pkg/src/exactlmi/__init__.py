"""Exact-arithmetic feasibility for linear matrix inequalities."""
from .arith import MultiPoly, QMatrix, UniPoly
from .bounds import aggregate_bound, bound_report, theta
from .driver import SolveLog, SolverConfig, low_rank_sym, low_rank_sym_rec, solve_lmi
from .errors import CollisionError, GenericityError, InternalError, NotShape, Timeout
from .feasibility import Empty, LinearPoint, Witness, check_lmi, rank_at, solve_linear
from .pencil import SymmetricPencil, load_pencil, random_pencil
from .ratpar import RationalParametrization

__version__ = "0.1.0"

__all__ = [
    "MultiPoly", "QMatrix", "UniPoly",
    "aggregate_bound", "bound_report", "theta",
    "SolveLog", "SolverConfig", "low_rank_sym", "low_rank_sym_rec", "solve_lmi",
    "CollisionError", "GenericityError", "InternalError", "NotShape", "Timeout",
    "Empty", "LinearPoint", "Witness", "check_lmi", "rank_at", "solve_linear",
    "SymmetricPencil", "load_pencil", "random_pencil",
    "RationalParametrization",
]
