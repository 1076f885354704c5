"""Exact LP solver and certificate checker.

A certificate accepted by verify_certificate is a proof of the claimed
outcome, so the random loops need no second solver: they check that the
solver always returns a verifying certificate and that tampered
certificates are rejected.
"""
from fractions import Fraction as F

import pytest

from polyexact.errors import InputError
from polyexact.lp import (
    FREE,
    NONNEG,
    NONPOS,
    LpInfeasible,
    LpOptimal,
    LpUnbounded,
    make_program,
    solve_lp,
    verify_certificate,
)
from polyexact.oracle import lp_mutations, random_lp


def test_box_corner_optimum():
    lp = make_program([-1, -1], ineqs=[((1, 0), 1), ((0, 1), 1)], signs=[NONNEG, NONNEG])
    out = solve_lp(lp)
    assert isinstance(out, LpOptimal)
    assert out.point == (1, 1)
    assert out.value == -2
    assert out.dual_ineq == (1, 1)


def test_contradictory_bounds_farkas():
    # x <= 0 and -x <= -1 together say 0 <= -1
    lp = make_program([0], ineqs=[((1,), 0), ((-1,), -1)])
    out = solve_lp(lp)
    assert isinstance(out, LpInfeasible)
    assert out.farkas_ineq == (1, 1)


def test_unbounded_below():
    lp = make_program([-1], signs=[NONNEG])
    out = solve_lp(lp)
    assert isinstance(out, LpUnbounded)
    assert out.ray == (1,)
    assert out.point == (0,)


def test_equality_constraint():
    lp = make_program([1, 1], ineqs=[((1, -1), 1)], eqs=[((1, 1), 3)])
    out = solve_lp(lp)
    assert isinstance(out, LpOptimal)
    assert out.value == 3


def test_fractional_data():
    lp = make_program(
        [1, 0],
        ineqs=[((2, 3), 6), ((-1, 0), F(-1, 2))],
        eqs=[((0, 1), F(1, 3))],
    )
    out = solve_lp(lp)
    assert out.point == (F(1, 2), F(1, 3))
    assert out.value == F(1, 2)


def test_nonpositive_variable():
    lp = make_program([1], ineqs=[((-1,), 5)], signs=[NONPOS])
    out = solve_lp(lp)
    assert out.point == (-5,)
    assert out.value == -5


def test_redundant_equalities_are_dropped():
    # the duplicated rows force redundant artificials out of the basis
    lp = make_program(
        [1, 0],
        ineqs=[((-1, 0), 0)],
        eqs=[((1, 1), 2), ((1, 1), 2), ((2, 2), 4)],
    )
    out = solve_lp(lp)
    assert isinstance(out, LpOptimal)
    assert out.value == 0
    assert out.point == (0, 2)


def test_infeasible_signs_vs_equality():
    lp = make_program([0, 0], eqs=[((1, 1), -1)], signs=[NONNEG, NONNEG])
    out = solve_lp(lp)
    assert isinstance(out, LpInfeasible)


def test_empty_program_is_feasible_at_origin():
    out = solve_lp(make_program([0, 0]))
    assert isinstance(out, LpOptimal)
    assert out.point == (0, 0)
    assert out.value == 0


def test_unbounded_through_equality():
    lp = make_program([1, 0], eqs=[((1, 1), 0)], signs=[FREE, NONNEG])
    out = solve_lp(lp)
    assert isinstance(out, LpUnbounded)
    assert out.ray[0] < 0


def test_degenerate_vertex():
    # three constraints meet at (0,0); Bland's rule must not cycle
    lp = make_program(
        [-1, -1],
        ineqs=[((1, 1), 0), ((1, 2), 0), ((2, 1), 0)],
        signs=[NONNEG, NONNEG],
    )
    out = solve_lp(lp)
    assert isinstance(out, LpOptimal)
    assert out.point == (0, 0)
    assert out.value == 0


def test_row_length_mismatch_rejected():
    with pytest.raises(InputError):
        make_program([1, 1], ineqs=[((1,), 0)])
    with pytest.raises(InputError):
        make_program([1], signs=[NONNEG, NONNEG])


def test_solver_is_deterministic():
    for seed in range(40):
        lp = random_lp(seed)
        assert solve_lp(lp) == solve_lp(lp)


def test_random_lps_verify():
    statuses = set()
    for seed in range(300):
        lp = random_lp(seed)
        out = solve_lp(lp)
        statuses.add(out.status)
        assert verify_certificate(lp, out)
    assert statuses == {"optimal", "infeasible", "unbounded"}


def test_mutated_certificates_rejected():
    mutated = 0
    for seed in range(300):
        lp = random_lp(seed)
        out = solve_lp(lp)
        for bad in lp_mutations(lp, out):
            mutated += 1
            assert not verify_certificate(lp, bad)
    assert mutated > 300


def test_cross_status_certificates_rejected():
    lp = make_program([-1], signs=[NONNEG])
    opt = LpOptimal(point=(F(0),), value=F(0), dual_ineq=(), dual_eq=())
    assert not verify_certificate(lp, opt)
    assert not verify_certificate(lp, LpInfeasible(farkas_ineq=(), farkas_eq=()))


def test_malformed_certificates_return_false():
    lp = make_program([1, 1], ineqs=[((1, 0), 1)], signs=[NONNEG, NONNEG])
    assert not verify_certificate(lp, LpOptimal(point=(F(0),), value=F(0), dual_ineq=(F(0),), dual_eq=()))
    assert not verify_certificate(lp, LpOptimal(point=(F(0), F(0)), value=F(0), dual_ineq=(), dual_eq=()))
    assert not verify_certificate(lp, "nonsense")
