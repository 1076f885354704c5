"""Extremality of a pair of convex sets, decided exactly.

A pair is extremal when arbitrarily small translations can pull the
sets apart. For polyhedra this is equivalent to the origin lying on
the boundary of the Minkowski difference, and that is how the verdict
is computed. Extremal pairs yield a concrete disjoining translation
and a separating functional; non-extremal pairs yield a certified
interior ball instead.
"""
from fractions import Fraction

from polyexact import is_extremal_system, load_instance, separate
from polyexact.report import human_vec as fv


def inspect(fixture, name1, name2):
    doc = load_instance(fixture)
    s1, s2 = doc.get_set(name1), doc.get_set(name2)
    verdict = is_extremal_system(s1, s2, epsilon=Fraction(1, 4))
    print(f"== {fixture}: {name1} vs {name2}")
    print(f"   extremal: {verdict.extremal}")
    if verdict.extremal:
        g, b = verdict.boundary_evidence
        print(f"   difference-set row {fv(g)} . x <= {b} excludes the "
              f"origin from the interior")
        print(f"   translating {name1} by {fv(verdict.perturbation)} makes "
              f"the sets disjoint")
        cert = separate(s1, s2)
        print(f"   separating functional {fv(cert.functional)}: "
              f"sup {cert.sup1} <= inf {cert.inf2}")
    else:
        r = verdict.interior_ball_radius
        print(f"   not extremal: difference contains a box of radius {r} "
              f"around the origin")


def main():
    inspect("halfplanes", "lower", "upper")
    inspect("boxes-corner", "left", "right")
    inspect("boxes-overlap", "left", "right")
    inspect("separated-boxes", "left", "right")


if __name__ == "__main__":
    main()
