"""When does the normal cone of an intersection split into a sum?

The inclusion "sum of normal cones inside the intersection's normal
cone" always holds. Equality needs a qualification condition; the one
checked here asks that the pair stays non-extremal inside every bounded
window around the point. The report also shows the classical interior
condition, which is strictly stronger: the first fixture fails it while
still satisfying the windowed one.
"""
from polyexact import intersection_rule, load_instance, qualification_report
from polyexact.report import human_vec as fv


def cone_text(cone) -> str:
    gens = ", ".join(fv(g) for g in cone.generators) or "none"
    lin = ", ".join(fv(l) for l in cone.lineality) or "none"
    return f"generators {gens}; lineality {lin}"


def inspect(fixture, name1, name2, point_name):
    doc = load_instance(fixture)
    s1, s2 = doc.get_set(name1), doc.get_set(name2)
    x = doc.get_point(point_name)
    qc = qualification_report(s1, s2, x)
    rule = intersection_rule(s1, s2, x)
    print(f"== {fixture} at {fv(x)}")
    print(f"   interiors meet: {qc.classical_interiority}")
    print(f"   windowed non-extremality: {qc.bounded_extremality} "
          f"(radius {qc.bounded_extremality_radius})")
    print(f"   cones equal: {rule.equal}")
    print(f"   intersection cone: {cone_text(rule.lhs)}")
    print(f"   sum cone:          {cone_text(rule.rhs)}")
    split = [d for d in rule.decompositions if d.part1 is not None]
    if split:
        d = split[0]
        print(f"   sample split: {fv(d.probe)} = {fv(d.part1)} + "
              f"{fv(d.part2)}")


def main():
    # a halfplane and a line through its boundary: no interior contact,
    # yet the windowed condition holds and the rule is exact
    inspect("halfplane-and-axis", "halfplane", "axis", "origin")
    # overlapping boxes: the classical condition holds too
    inspect("boxes-overlap", "left", "right", "inner")
    # corner contact: extremal, not qualified; inclusion still verified
    inspect("boxes-corner", "left", "right", "contact")


if __name__ == "__main__":
    main()
