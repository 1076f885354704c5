"""Every linear program comes back with a checkable certificate.

Solve three tiny programs, one per outcome, and re-verify each
certificate with the independent checker.
"""
from fractions import Fraction

from polyexact import (
    LpInfeasible,
    LpOptimal,
    LpUnbounded,
    make_program,
    solve_lp,
    verify_certificate,
)
from polyexact.report import human_vec as fv


def show(title, lp):
    outcome = solve_lp(lp)
    print(f"== {title}")
    if isinstance(outcome, LpOptimal):
        print(f"   optimal value {outcome.value} at {fv(outcome.point)}")
        print(f"   dual multipliers {fv(outcome.dual_ineq)}")
    elif isinstance(outcome, LpInfeasible):
        print(f"   infeasible; contradiction weights {fv(outcome.farkas_ineq)}")
    elif isinstance(outcome, LpUnbounded):
        print(f"   unbounded along ray {fv(outcome.ray)}")
    print(f"   certificate verified: {verify_certificate(lp, outcome)}")


def main():
    # min x + y over the triangle x, y >= 0, x + y >= 1/2
    show("optimal", make_program(
        [1, 1],
        ineqs=[((-1, 0), 0), ((0, -1), 0), ((-1, -1), Fraction(-1, 2))],
    ))

    # x <= -1 and x >= 1 cannot both hold
    show("infeasible", make_program(
        [1],
        ineqs=[((1,), -1), ((-1,), -1)],
    ))

    # min x with x <= 0 has no floor
    show("unbounded", make_program([1], ineqs=[((1,), 0)]))


if __name__ == "__main__":
    main()
