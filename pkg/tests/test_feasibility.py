import random
from fractions import Fraction

import pytest

from exactlmi.arith import QMatrix, UniPoly
from exactlmi.cli import fixture_path
from exactlmi.feasibility import (
    accepted_roots,
    char_poly_coeffs,
    check_lmi,
    is_psd_by_coeffs,
    point_enclosure,
    rank_at,
    solve_linear,
)
from exactlmi.pencil import SymmetricPencil, load_pencil, pencil_eval, random_pencil
from exactlmi.ratpar import RationalParametrization
from exactlmi.realroots import isolate_roots

from helpers import psd_oracle, rank_oracle

T = UniPoly([0, 1])


def scheiderer_reference_rp() -> RationalParametrization:
    q = [[3, 16], [8, 0, -24], [8, 6, 8], [16, 6, -16], [-3, -16], [3, 16]]
    rp = RationalParametrization(6, UniPoly([-8, 0, 24]), tuple(UniPoly(c) for c in q), UniPoly([-1, -8, 0, 8]))
    rp.check_invariants()
    return rp


class TestSolveLinear:
    def test_unique(self):
        # A(x) = x1 * I - I vanishes at x1 = 1
        p = SymmetricPencil(2, 1, (QMatrix.identity(2).scale(-1), QMatrix.identity(2)))
        assert solve_linear(p) == (1,)

    def test_free_variable_set_to_zero(self):
        z = QMatrix.zeros(2, 2)
        p = SymmetricPencil(2, 2, (QMatrix.identity(2).scale(-3), QMatrix.identity(2), z))
        assert solve_linear(p) == (3, 0)

    def test_inconsistent(self):
        p = SymmetricPencil(2, 1, (QMatrix.identity(2), QMatrix.from_rows([[1, 0], [0, 2]])))
        assert solve_linear(p) is None

    def test_solution_really_vanishes(self):
        A1, A2 = QMatrix.from_rows([[1, 2], [2, 0]]), QMatrix.from_rows([[0, 1], [1, 5]])
        A0 = (A1.scale(Fraction(2, 3)) + A2.scale(-4)).scale(-1)
        x = solve_linear(SymmetricPencil(2, 2, (A0, A1, A2)))
        assert pencil_eval(SymmetricPencil(2, 2, (A0, A1, A2)), list(x)).is_zero()


class TestCharPoly:
    def test_scalar(self):
        p = SymmetricPencil(1, 1, (QMatrix.from_rows([[2]]), QMatrix.from_rows([[3]])))
        cp = char_poly_coeffs(p)
        assert len(cp.f) == 1 and cp.f[0]([1]) == 5

    def test_diagonal(self):
        # diag(x1, x2): det(A + sI) = s^2 + (x1 + x2) s + x1 x2
        z = QMatrix.zeros(2, 2)
        p = SymmetricPencil(2, 2, (z, QMatrix.from_rows([[1, 0], [0, 0]]), QMatrix.from_rows([[0, 0], [0, 1]])))
        cp = char_poly_coeffs(p)
        assert cp.f[0]([3, 4]) == 7 and cp.f[1]([3, 4]) == 12

    def test_psd_matches_ldl_oracle(self):
        rng = random.Random(7)
        for seed in range(4):
            p = random_pencil(3, 2, seed, 5, integer=True)
            cp = char_poly_coeffs(p)
            for _ in range(50):
                x = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(2)]
                A = pencil_eval(p, x)
                rows = [A.row(i) for i in range(3)]
                assert is_psd_by_coeffs(cp, x) == psd_oracle(rows)

    def test_psd_on_the_boundary(self):
        # rank-deficient PSD matrices must be accepted, indefinite singular ones rejected
        z = QMatrix.zeros(2, 2)
        p = SymmetricPencil(2, 2, (z, QMatrix.from_rows([[1, 0], [0, 0]]), QMatrix.from_rows([[0, 0], [0, 1]])))
        cp = char_poly_coeffs(p)
        assert is_psd_by_coeffs(cp, [0, 2]) and is_psd_by_coeffs(cp, [0, 0])
        assert not is_psd_by_coeffs(cp, [0, -1])


class TestCheckLmi:
    def test_scalar_pencil(self):
        # A(x) = x: roots -1 and 0, only 0 is feasible
        p = SymmetricPencil(1, 1, (QMatrix.from_rows([[0]]), QMatrix.from_rows([[1]])))
        rp = RationalParametrization.from_coordinates(UniPoly.from_roots([-1, 0]), [T])
        alpha, signs = check_lmi(p, rp)
        assert alpha.is_rational and alpha.lo == 0 and signs == [0]
        only_neg = RationalParametrization.from_coordinates(UniPoly([1, 1]), [T])
        assert check_lmi(p, only_neg) is None
        assert check_lmi(p, RationalParametrization.empty(1)) is None

    def test_scheiderer_reference_parametrization(self):
        p = load_pencil(fixture_path("scheiderer.json"))
        rp = scheiderer_reference_rp()
        acc = accepted_roots(p, rp)
        assert len(acc) == 2 and len(isolate_roots(rp.qn1)) == 3
        assert [rank_at(p, rp, a) for a, _ in acc] == [2, 2]
        first, _ = check_lmi(p, rp)
        assert first == acc[0][0]
        boxes = point_enclosure(rp, first, Fraction(1, 10 ** 12))
        expected = (-0.93040292655585, -1, 0.73129921148739, -0.26870078851261, 0.93040292655585, -0.93040292655585)
        for (lo, hi), e in zip(boxes, expected):
            assert hi - lo <= Fraction(1, 10 ** 12)
            assert abs(float(lo) - e) < 1e-12

    def test_rejected_root_is_indefinite(self):
        p = load_pencil(fixture_path("scheiderer.json"))
        rp = scheiderer_reference_rp()
        accepted = {a for a, _ in accepted_roots(p, rp)}
        rejected = [a for a in isolate_roots(rp.qn1) if a not in accepted]
        assert len(rejected) == 1
        # evaluate at a close rational point: some eigenvalue is clearly negative
        box = point_enclosure(rp, rejected[0], Fraction(1, 10 ** 20))
        A = pencil_eval(p, [lo for lo, _ in box])
        assert not psd_oracle([A.row(i) for i in range(6)])


def test_rank_at_matches_elimination():
    # A(x) = diag(x, x - 1, 2) at x = 0, 1, 3
    A0 = QMatrix.from_rows([[0, 0, 0], [0, -1, 0], [0, 0, 2]])
    A1 = QMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    p = SymmetricPencil(3, 1, (A0, A1))
    rp = RationalParametrization.from_coordinates(UniPoly.from_roots([0, 1, 3]), [T])
    for a in isolate_roots(rp.qn1):
        A = pencil_eval(p, [a.lo])
        assert rank_at(p, rp, a) == rank_oracle([A.row(i) for i in range(3)])
    with pytest.raises(ValueError):
        rank_at(p, RationalParametrization.empty(1), isolate_roots(rp.qn1)[0])


def test_rank_at_irrational_root():
    # A(x) = [[x, 1], [1, x]] has rank 1 at x = +-1 and rank 2 at x = sqrt 2
    p = SymmetricPencil(2, 1, (QMatrix.from_rows([[0, 1], [1, 0]]), QMatrix.identity(2)))
    rp = RationalParametrization.from_coordinates(UniPoly([-2, 0, 1]) * UniPoly.from_roots([1]), [T])
    ranks = [rank_at(p, rp, a) for a in isolate_roots(rp.qn1)]
    assert ranks == [2, 1, 2]
