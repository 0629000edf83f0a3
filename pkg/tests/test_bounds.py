from math import comb

import pytest

from exactlmi.bounds import aggregate_bound, bound_report, index_set, p_r, theta

from helpers import theta_oracle

# (m, r, n, theta) rows of the published bound table
TABLE = [
    (3, 2, 2, 9), (3, 2, 3, 16), (3, 2, 4, 15), (3, 2, 5, 6), (3, 2, 6, 0),
    (4, 2, 3, 35), (4, 2, 4, 245), (4, 2, 5, 896), (4, 2, 6, 2100), (4, 2, 7, 3340),
    (4, 2, 8, 3619), (4, 2, 9, 2576), (4, 2, 12, 0),
    (4, 3, 3, 52), (4, 3, 4, 95), (4, 3, 7, 20), (4, 3, 8, 0), (4, 3, 9, 0),
    (5, 2, 5, 0), (5, 2, 6, 924), (5, 2, 7, 10296),
    (5, 3, 3, 84), (5, 3, 4, 882),
    (5, 4, 2, 30), (5, 4, 3, 120), (5, 4, 4, 325), (5, 4, 5, 606),
    (6, 3, 3, 0), (6, 3, 4, 0), (6, 3, 5, 0), (6, 3, 6, 5005),
    (6, 4, 2, 0), (6, 4, 3, 165), (6, 5, 3, 230),
]


def test_p_r():
    assert p_r(3, 2) == 3 and p_r(4, 2) == 7 and p_r(5, 5) == 0
    with pytest.raises(ValueError):
        p_r(3, 4)


@pytest.mark.parametrize("m,r,n,expected", TABLE)
def test_table_rows(m, r, n, expected):
    assert theta(m, n, r) == expected


def test_empty_index_set():
    assert index_set(3, 2, 1) == [] and theta(3, 2, 1) == 0
    assert index_set(3, 2, 2) == [0, 1]


def test_range_errors():
    for args in [(3, 2, 3), (3, 0, 1), (0, 1, 0), (3, 2, -1)]:
        with pytest.raises(ValueError):
            index_set(*args)


def test_aggregate():
    assert aggregate_bound(3, 2, 0) == 0
    assert aggregate_bound(3, 2, 2) == 27
    vals = [aggregate_bound(5, 4, r) for r in range(5)]
    assert vals == sorted(vals)
    with pytest.raises(ValueError):
        aggregate_bound(3, 2, 3)


def test_against_expansion_oracle_and_cube_bound():
    for m in range(1, 7):
        for n in range(1, 10):
            for r in range(m):
                t = theta(m, n, r)
                assert t == theta_oracle(m, n, r), (m, n, r)
                assert t <= comb(p_r(m, r) + n, n) ** 3


def test_report():
    rep = bound_report(3, 2, 2)
    assert rep.to_dict() == {"m": 3, "n": 2, "r": 2, "p_r": 3, "index_set": [0, 1], "theta": 9,
                             "cube_bound": 1000}
