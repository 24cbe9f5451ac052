from fractions import Fraction

import pytest

from bairelab.simplex import LPInfeasible, LPUnbounded, solve_lp

F = Fraction


def test_basic_vertex_optimum():
    value, x = solve_lp(
        c=[F(-1), F(-1)],
        a_ub=[[F(1), F(2)], [F(3), F(1)]],
        b_ub=[F(4), F(6)],
    )
    # optimum at the intersection (8/5, 6/5)
    assert x == [F(8, 5), F(6, 5)]
    assert value == F(-14, 5)


def test_equality_constraint():
    value, x = solve_lp(
        c=[F(1), F(0)],
        a_eq=[[F(1), F(1)]],
        b_eq=[F(1)],
    )
    assert value == 0
    assert x == [F(0), F(1)]


def test_negative_rhs_normalization():
    # x >= 1 encoded as -x <= -1
    value, x = solve_lp(c=[F(1)], a_ub=[[F(-1)]], b_ub=[F(-1)])
    assert value == 1 and x == [F(1)]


def test_infeasible():
    with pytest.raises(LPInfeasible):
        solve_lp(c=[F(0)], a_ub=[[F(1)], [F(-1)]], b_ub=[F(1), F(-2)])


def test_unbounded():
    with pytest.raises(LPUnbounded):
        solve_lp(c=[F(-1)])


def test_game_value_lp():
    # min t subject to a1 + a2 = 1, +-(a1 - a2) <= t
    value, x = solve_lp(
        c=[F(0), F(0), F(1)],
        a_ub=[[F(1), F(-1), F(-1)], [F(-1), F(1), F(-1)]],
        b_ub=[F(0), F(0)],
        a_eq=[[F(1), F(1), F(0)]],
        b_eq=[F(1)],
    )
    assert value == 0
    assert x[0] == x[1] == F(1, 2)


def test_degenerate_problem_terminates():
    value, x = solve_lp(
        c=[F(-1), F(0)],
        a_ub=[[F(1), F(0)], [F(1), F(0)], [F(1), F(1)]],
        b_ub=[F(1), F(1), F(1)],
    )
    assert value == -1 and x[0] == 1
