"""Epsilon-scale dual certificates at a common point of an extremal pair.

For every positive epsilon the certificate provides points of each set
within epsilon of the reference point and opposite unit functionals
within epsilon of the respective normal cones. All four conditions are
exact rational statements, re-checked independently here.
"""
from fractions import Fraction

from polyexact import (
    approximate_extremal_principle,
    exact_extremal_principle,
    load_instance,
    verify_approx_ep,
)
from polyexact.report import human_vec as fv


def main():
    doc = load_instance("boxes-touching")
    left, right = doc.get_set("left"), doc.get_set("right")
    contact = doc.get_point("contact")

    print(f"pair touches at {fv(contact)}")
    for eps in (Fraction(1), Fraction(1, 10), Fraction(1, 1000)):
        cert = approximate_extremal_principle(left, right, contact, eps)
        print(f"== epsilon = {eps}")
        print(f"   points {fv(cert.x1)} and {fv(cert.x2)}")
        print(f"   functionals {fv(cert.xstar1)} and {fv(cert.xstar2)} "
              f"(unit size, opposite)")
        print(f"   normal-cone residuals {fv(cert.error1)} and "
              f"{fv(cert.error2)}")
        print(f"   recheck: {verify_approx_ep(left, right, contact, cert)}")

    # polyhedral pairs even admit the limiting certificate: a common
    # normal with zero residual
    g = exact_extremal_principle(left, right, contact)
    print(f"exact version: {fv(g)} is normal to the first set and "
          f"-{fv(g)} to the second")


if __name__ == "__main__":
    main()
