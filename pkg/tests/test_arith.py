from fractions import Fraction

import pytest

from exactlmi.arith import (
    MultiPoly,
    QMatrix,
    UniPoly,
    eval_multipoly,
    format_rational,
    parse_rational,
    poly_arith,
    rref,
    squarefree_part,
    uni_gcd,
)
from exactlmi.pencil import random_invertible

from helpers import det_oracle

X = ("x1", "x2", "y1", "y2")


def var(name, roster=X):
    return MultiPoly.var(name, roster)


class TestRationals:
    @pytest.mark.parametrize("text,value", [("3", 3), ("-7/4", Fraction(-7, 4)), ("6/4", Fraction(3, 2)), (" 0 ", 0)])
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("bad", ["1.5", "1/0", "1/-2", "", "abc", "+3", True, 1.5, "٣"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    def test_format_round_trip(self):
        for q in [Fraction(0), Fraction(-3), Fraction(22, 7), Fraction(-1, 3)]:
            assert parse_rational(format_rational(q)) == q
        assert format_rational(Fraction(0)) == "0"


class TestMultiPoly:
    def test_difference_of_squares(self):
        x1 = var("x1")
        assert poly_arith(x1 + 1, x1 - 1, "mul") == x1 * x1 - 1

    def test_additive_identity(self):
        p = var("x1") * 3 + var("y2")
        assert poly_arith(p, MultiPoly({}, X), "add") == p

    def test_disjoint_supports(self):
        p = poly_arith(var("x1") * var("y1"), var("x2") * var("y2"), "mul")
        assert p.terms == {(1, 1, 1, 1): 1}

    def test_roster_auto_extension(self):
        a = MultiPoly.var("u", ("u",))
        b = MultiPoly.var("v", ("v",))
        s = a + b
        assert set(s.vars) == {"u", "v"}
        assert s.subs({"u": 1, "v": 2}) == 3

    def test_no_zero_coefficients(self):
        x1 = var("x1")
        assert (x1 - x1).terms == {}
        assert MultiPoly({(0, 0, 0, 0): 0}, X).is_zero()

    def test_eval(self):
        p = var("x1") ** 2 - 1
        assert eval_multipoly(p, [3, 0, 0, 0]) == 8
        q = var("x1") * var("y2") + 5
        assert eval_multipoly(q, [0, 0, 0, 0]) == q.constant_term() == 5

    def test_eval_length_mismatch(self):
        with pytest.raises(ValueError):
            eval_multipoly(var("x1"), [1, 2])

    def test_diff_and_subs(self):
        p = var("x1") ** 2 * var("y1") + 3 * var("x2")
        assert p.diff("x1") == 2 * var("x1") * var("y1")
        assert p.subs({"x1": 2})([0, 1, 1, 0]) == 7

    def test_exponent_guard(self):
        with pytest.raises(OverflowError):
            MultiPoly({(2 ** 40, 0, 0, 0): 1}, X)

    def test_degrees(self):
        p = var("x1") * var("y1") + var("x2") ** 3
        assert p.total_degree() == 3
        assert p.degree_in(["y1", "y2"]) == 1


class TestUniPoly:
    def test_degree_of_product(self):
        p, q = UniPoly([1, 2, 3]), UniPoly([-1, 0, 0, 5])
        assert (p * q).degree == p.degree + q.degree

    def test_gcd_shared_factor(self):
        assert uni_gcd(UniPoly([-1, 0, 1]), UniPoly([-1, 1])) == UniPoly([-1, 1])

    def test_gcd_scheiderer_squarefree(self):
        p = UniPoly([-1, -8, 0, 8])
        assert uni_gcd(p, UniPoly([-8, 0, 24])) == 1

    def test_gcd_idempotent_and_zero(self):
        p = UniPoly([4, 0, 2])
        assert uni_gcd(p, p) == p.monic()
        assert uni_gcd(p, UniPoly([])) == p.monic()

    def test_squarefree_part(self):
        p = UniPoly.from_roots([1, 1, -2])
        assert squarefree_part(p) == UniPoly.from_roots([1, -2]).primitive()
        s = UniPoly([-1, -8, 0, 8])
        assert squarefree_part(s) == s
        assert squarefree_part(UniPoly([5])) == 1

    def test_squarefree_of_zero_fails(self):
        with pytest.raises(ValueError):
            squarefree_part(UniPoly([]))

    def test_divmod(self):
        a, b = UniPoly([1, 2, 3, 4]), UniPoly([1, 1])
        q, r = a.divmod(b)
        assert q * b + r == a and r.degree < b.degree


class TestMatrices:
    def test_rref_identity(self):
        red, piv = rref(QMatrix.identity(3))
        assert red == QMatrix.identity(3) and piv == [0, 1, 2]

    def test_rref_rank_one(self):
        red, piv = rref(QMatrix.from_rows([[1, 2], [2, 4]]))
        assert red == QMatrix.from_rows([[1, 2], [0, 0]]) and piv == [0]

    def test_rref_random_invertible(self):
        M = random_invertible(4, 11, 20)
        assert det_oracle(M.tolist()) != 0
        assert len(rref(M)[1]) == 4

    def test_rref_idempotent(self):
        M = QMatrix.from_rows([[1, 2, 3], [2, 4, 7], [0, 0, 1]])
        red, _ = rref(M)
        assert rref(red)[0] == red

    def test_det_and_inverse(self):
        M = QMatrix.from_rows([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
        assert M.det() == det_oracle(M.tolist())
        assert M @ M.inverse() == QMatrix.identity(3)

    def test_singular_inverse(self):
        with pytest.raises(ZeroDivisionError):
            QMatrix.from_rows([[1, 2], [2, 4]]).inverse()

    def test_nullspace(self):
        M = QMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
        for v in M.nullspace():
            assert M @ v == [0, 0]
        assert len(M.nullspace()) == 2
