"""Exact convex calculus for pairs of polyhedra.

Three groups of results live here. Qualification conditions compare the
classical overlap-of-interiors test with conditions phrased on the
difference set, including a windowed variant that restricts the second
set to a box around a common point. The normal-cone rule computes the
cone of an intersection two ways and splits probe functionals across
the summands. Support-function identities evaluate the support of an
intersection against the infimal convolution of the individual
supports, with witnesses that attain the convolution exactly.

Every verdict is an exact rational computation: interiority claims are
certified by corner decompositions of a small cube, and both sides of
each identity come from independently solved linear programs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .cones import (
    PolyhedralCone,
    cone_sum,
    cone_sum_decompose,
    cones_equal,
    normal_cone,
)
from .errors import InputError, InternalError, PreconditionError
from .linalg import (
    ONE,
    ZERO,
    Vec,
    dot,
    is_zero_vec,
    l1_norm,
    linf_norm,
    unit_vec,
    vadd,
    vec,
    vneg,
    vscale,
    vsub,
    zero_vec,
)
from .lp import (
    FREE,
    NONNEG,
    LpInfeasible,
    LpOptimal,
    LpUnbounded,
    make_program,
    solve_lp,
)
from .oracle import Lcg
from .sets import ConvexSet, ball_inf

RADIUS_GRID = tuple(Fraction(2 ** k) for k in range(7))

PROBE_COUNT = 16


def _check_dims(s1: ConvexSet, s2: ConvexSet) -> None:
    if s1.dim != s2.dim:
        raise InputError("sets live in different dimensions")


def _common_member(s1: ConvexSet, s2: ConvexSet, xbar) -> Vec:
    _check_dims(s1, s2)
    x = vec(xbar)
    if len(x) != s1.dim:
        raise InputError("point dimension does not match the sets")
    if not (s1.contains(x) and s2.contains(x)):
        raise PreconditionError("the point must belong to both sets")
    return x


def common_point(s1: ConvexSet, s2: ConvexSet) -> Vec | None:
    """A point of the intersection, or None when the sets are disjoint."""
    _check_dims(s1, s2)
    h = s1.intersect(s2).hrep()
    out = solve_lp(make_program(zero_vec(h.dim), ineqs=h.ineqs, eqs=h.eqs))
    return out.point if isinstance(out, LpOptimal) else None


def _reach_along(s1: ConvexSet, s2: ConvexSet, direction: Vec):
    """Largest delta in [0, 1] with delta * direction = x1 - x2 for some
    x1 in s1, x2 in s2, together with a maximizing pair. Returns zero
    with no pair when not even delta = 0 is feasible."""
    n = s1.dim
    h1, h2 = s1.hrep(), s2.hrep()
    zero = zero_vec(n)

    def row1(a):
        return a + zero + (ZERO,)

    def row2(a):
        return zero + a + (ZERO,)

    ineqs = [(row1(a), b) for a, b in h1.ineqs]
    ineqs += [(row2(a), b) for a, b in h2.ineqs]
    ineqs.append((zero + zero + (ONE,), ONE))
    eqs = [(row1(a), b) for a, b in h1.eqs]
    eqs += [(row2(a), b) for a, b in h2.eqs]
    for j in range(n):
        coeff = [ZERO] * (2 * n + 1)
        coeff[j] = ONE
        coeff[n + j] = -ONE
        coeff[2 * n] = -direction[j]
        eqs.append((tuple(coeff), ZERO))
    obj = zero + zero + (-ONE,)
    signs = (FREE,) * (2 * n) + (NONNEG,)
    out = solve_lp(make_program(obj, ineqs=ineqs, eqs=eqs, signs=signs))
    if isinstance(out, LpOptimal):
        return -out.value, out.point[:n], out.point[n:2 * n]
    if isinstance(out, LpInfeasible):
        return ZERO, None, None
    raise InternalError("a reach capped at one cannot be unbounded")


def _corner_decompositions(s1: ConvexSet, s2: ConvexSet, window: ConvexSet | None = None):
    """Reach along every sign corner of the unit cube, with maximizing
    pairs. The window, when given, restricts the second set. Returns
    None as soon as some corner has reach zero; all corners positive
    certifies the origin interior to the (windowed) difference, since
    the hull of the reached corners contains a cube."""
    dim = s1.dim
    t2 = s2.intersect(window) if window is not None else s2
    out = []
    for bits in range(1 << dim):
        c = tuple(ONE if bits >> j & 1 else -ONE for j in range(dim))
        delta, x1, x2 = _reach_along(s1, t2, c)
        if delta == 0:
            return None
        out.append((c, delta, x1, x2))
    return out


def difference_interiority(s1: ConvexSet, s2: ConvexSet) -> Fraction | None:
    """Certified sup-norm radius of a box around the origin inside
    s1 - s2, or None when the origin is not interior to the difference.
    The difference set is never materialized; each corner of the box is
    reached by its own decomposition program."""
    _check_dims(s1, s2)
    corners = _corner_decompositions(s1, s2)
    if corners is None:
        return None
    return min(delta for _, delta, _, _ in corners)


def core_at_zero(s1: ConvexSet, s2: ConvexSet) -> bool:
    """Whether the origin lies in the core of s1 - s2: the difference
    contains the origin and absorbs every signed coordinate direction.
    Convexity then absorbs all directions, so this matches the
    definitional core test on the materialized difference."""
    _check_dims(s1, s2)
    if common_point(s1, s2) is None:
        return False
    for i in range(s1.dim):
        for sign in (1, -1):
            delta, _, _ = _reach_along(s1, s2, unit_vec(s1.dim, i, sign))
            if delta == 0:
                return False
    return True


def _meets_interior(s1: ConvexSet, s2: ConvexSet) -> bool:
    """Whether some point of s1 is interior to s2."""
    ch = s2.canonical_hrep()
    if ch.eqs:
        return False
    h1 = s1.hrep()
    n = s1.dim
    ineqs = [(a + (ZERO,), b) for a, b in h1.ineqs]
    ineqs += [(a + (l1_norm(a),), b) for a, b in ch.ineqs]
    ineqs.append((zero_vec(n) + (ONE,), ONE))
    eqs = [(a + (ZERO,), b) for a, b in h1.eqs]
    out = solve_lp(make_program(zero_vec(n) + (-ONE,), ineqs=ineqs, eqs=eqs))
    if isinstance(out, LpOptimal):
        return -out.value > 0
    if isinstance(out, LpInfeasible):
        return False
    raise InternalError("slack capped at one cannot be unbounded")


@dataclass(frozen=True)
class QcReport:
    """Four qualification conditions for a pair at a common point.

    classical_interiority: the first set meets the interior of the
    second. difference_interiority: the origin is interior to the
    difference set. bounded_extremality: the same with the second set
    restricted to a sup-norm box around the common point; the working
    box radius rides along. core_condition: the origin lies in the core
    of the difference."""

    classical_interiority: bool
    difference_interiority: bool
    bounded_extremality: bool
    bounded_extremality_radius: Fraction | None
    core_condition: bool


def qualification_report(s1: ConvexSet, s2: ConvexSet, xbar) -> QcReport:
    """Evaluate all four qualification conditions exactly.

    The window radius is searched over RADIUS_GRID and the first working
    value is reported. If the bare difference condition holds but no
    grid radius works, a sufficient radius is derived from the corner
    decompositions by shrinking them toward the common point, so the
    windowed condition is decided, never given up on."""
    x = _common_member(s1, s2, xbar)
    classical = _meets_interior(s1, s2)
    corners = _corner_decompositions(s1, s2)
    core = core_at_zero(s1, s2)
    radius = None
    if corners is not None:
        for r in RADIUS_GRID:
            if _corner_decompositions(s1, s2, window=ball_inf(x, r)) is not None:
                radius = r
                break
        else:
            radius = _certified_window_radius(s1, s2, x, corners)
    return QcReport(
        classical_interiority=classical,
        difference_interiority=corners is not None,
        bounded_extremality=radius is not None,
        bounded_extremality_radius=radius,
        core_condition=core,
    )


def _certified_window_radius(s1: ConvexSet, s2: ConvexSet, xbar: Vec, corners) -> Fraction:
    """Window radius derived from unrestricted corner decompositions.

    Scaling each decomposition toward the common point until all corners
    reach the same small cube keeps every second part within a
    computable sup-norm distance of that point, and that distance is a
    valid window radius. Verified before being reported."""
    rho = min(delta for _, delta, _, _ in corners)
    need = ONE
    for _, delta, _, x2 in corners:
        need = max(need, rho / delta * linf_norm(vsub(x2, xbar)))
    r = Fraction(ceil(need))
    if _corner_decompositions(s1, s2, window=ball_inf(xbar, r)) is None:
        raise InternalError("derived window radius failed to verify")
    return r


@dataclass(frozen=True)
class ProbeDecomposition:
    """Split of one probe functional across the two normal cones.

    in_lhs records membership in the intersection's cone; the parts are
    present when the probe also splits across the sum, and they then
    satisfy part1 + part2 = probe with each part in its cone."""

    probe: Vec
    in_lhs: bool
    part1: Vec | None
    part2: Vec | None


@dataclass(frozen=True)
class IntersectionRuleResult:
    """Both sides of the normal-cone rule at a common point."""

    lhs: PolyhedralCone
    rhs: PolyhedralCone
    equal: bool
    decompositions: tuple[ProbeDecomposition, ...]


def intersection_rule(s1: ConvexSet, s2: ConvexSet, xbar, probes=None) -> IntersectionRuleResult:
    """Normal cone of the intersection versus the sum of normal cones.

    The left side comes from the rows of the intersection active at the
    point, the right side from summing the two cones computed
    separately. Every probe functional that lies in the left cone is
    split across the summands when possible."""
    x = _common_member(s1, s2, xbar)
    n1 = normal_cone(s1, x)
    n2 = normal_cone(s2, x)
    lhs = normal_cone(s1.intersect(s2), x)
    rhs = cone_sum(n1, n2)
    if probes is None:
        probes = standard_probes(s1.dim)
    decs = []
    for raw in probes:
        p = vec(raw)
        if lhs.contains(p):
            split = cone_sum_decompose(n1, n2, p)
            part1, part2 = split if split is not None else (None, None)
            decs.append(ProbeDecomposition(p, True, part1, part2))
        else:
            decs.append(ProbeDecomposition(p, False, None, None))
    return IntersectionRuleResult(lhs, rhs, cones_equal(lhs, rhs), tuple(decs))


def standard_probes(dim: int) -> tuple[Vec, ...]:
    """Deterministic probe directions: all signed unit vectors followed
    by sixteen fixed pseudo-random rational directions."""
    if dim < 1:
        raise InputError("dimension must be positive")
    out = [unit_vec(dim, i, sign) for i in range(dim) for sign in (1, -1)]
    rng = Lcg(977 + dim)
    while len(out) < 2 * dim + PROBE_COUNT:
        cand = tuple(rng.fraction(span=3, dens=(1, 2)) for _ in range(dim))
        if any(cand) and cand not in out:
            out.append(cand)
    return tuple(out)


@dataclass(frozen=True)
class SupportValue:
    """Exact support value of a set along a functional. A None value
    means plus infinity, certified by a recession direction with
    positive pay against the functional."""

    value: Fraction | None
    maximizer: Vec | None
    ray: Vec | None

    @property
    def finite(self) -> bool:
        return self.value is not None


def support_value(s: ConvexSet, xstar) -> SupportValue:
    """Supremum of the functional over the set, by one linear program."""
    g = vec(xstar)
    if len(g) != s.dim:
        raise InputError("functional dimension does not match the set")
    if s.is_empty():
        raise PreconditionError("support of the empty set")
    h = s.hrep()
    out = solve_lp(make_program(vneg(g), ineqs=h.ineqs, eqs=h.eqs))
    if isinstance(out, LpOptimal):
        return SupportValue(-out.value, out.point, None)
    if isinstance(out, LpUnbounded):
        return SupportValue(None, None, out.ray)
    raise InternalError("a nonempty set cannot have an infeasible support program")


@dataclass(frozen=True)
class InfConvolutionValue:
    """Value of the infimal convolution of two support functions.

    kind is "finite", "plus-infinity" when the functional admits no
    split with both supports finite, or "minus-infinity" when splits of
    arbitrarily low cost exist, which happens only for disjoint sets.
    Finite values carry witnesses splitting the functional with exact
    attainment."""

    kind: str
    value: Fraction | None
    witness1: Vec | None
    witness2: Vec | None


def inf_convolution_support(s1: ConvexSet, s2: ConvexSet, xstar) -> InfConvolutionValue:
    """Infimal convolution of the two support functions at a functional.

    One linear program over multipliers of both row systems: minimize
    the combined right hand sides subject to the combined row normals
    recombining to the functional. Row multipliers for inequalities are
    nonnegative, those for equalities are free. The witnesses are the
    two halves of that recombination."""
    _check_dims(s1, s2)
    g = vec(xstar)
    if len(g) != s1.dim:
        raise InputError("functional dimension does not match the sets")
    if s1.is_empty() or s2.is_empty():
        raise PreconditionError("both sets must be nonempty")
    h1, h2 = s1.hrep(), s2.hrep()
    normals: list[Vec] = []
    objective: list[Fraction] = []
    signs: list[int] = []
    for h in (h1, h2):
        for a, b in h.ineqs:
            normals.append(a)
            objective.append(b)
            signs.append(NONNEG)
        for a, b in h.eqs:
            normals.append(a)
            objective.append(b)
            signs.append(FREE)
    if not normals:
        if is_zero_vec(g):
            zero = zero_vec(s1.dim)
            return InfConvolutionValue("finite", ZERO, zero, zero)
        return InfConvolutionValue("plus-infinity", None, None, None)
    k1 = len(h1.ineqs) + len(h1.eqs)
    eqs = []
    for j in range(s1.dim):
        eqs.append((tuple(a[j] for a in normals), g[j]))
    out = solve_lp(make_program(tuple(objective), eqs=eqs, signs=tuple(signs)))
    if isinstance(out, LpInfeasible):
        return InfConvolutionValue("plus-infinity", None, None, None)
    if isinstance(out, LpUnbounded):
        return InfConvolutionValue("minus-infinity", None, None, None)
    w1 = zero_vec(s1.dim)
    for k in range(k1):
        w1 = vadd(w1, vscale(out.point[k], normals[k]))
    return InfConvolutionValue("finite", out.value, w1, vsub(g, w1))


@dataclass(frozen=True)
class SupportIntersectionVerdict:
    """Both sides of the intersection support identity.

    The left side is the support of the intersection, None standing for
    the empty intersection, whose support is minus infinity everywhere.
    The right side is the infimal convolution. Hypotheses for the exact
    identity are a nonempty intersection, at least one bounded set, and
    difference interiority; they are checked, and when met the sides
    must agree with witnesses attaining the value. The one-sided
    comparison left <= right holds regardless and is always verified."""

    hypotheses_met: bool
    intersection_nonempty: bool
    bounded_side: int
    difference_interiority: bool
    intersection_support: SupportValue | None
    convolution: InfConvolutionValue
    equal: bool
    attained: bool | None
    inequality_holds: bool


_KIND_ORDER = {"minus-infinity": -1, "finite": 0, "plus-infinity": 1}


def support_intersection_theorem(s1: ConvexSet, s2: ConvexSet, xstar) -> SupportIntersectionVerdict:
    """Evaluate the intersection support identity at one functional.

    Both sides are computed by independent programs. Under the checked
    hypotheses the identity and the attainment of the convolution by its
    witnesses are asserted, and a failure raises InternalError rather
    than reporting a false verdict. Without the hypotheses only the
    universal inequality is asserted."""
    _check_dims(s1, s2)
    g = vec(xstar)
    if len(g) != s1.dim:
        raise InputError("functional dimension does not match the sets")
    if s1.is_empty() or s2.is_empty():
        raise PreconditionError("both sets must be nonempty")
    inter = s1.intersect(s2)
    nonempty = not inter.is_empty()
    bounded_side = 1 if s1.is_bounded() else 2 if s2.is_bounded() else 0
    dqc = difference_interiority(s1, s2) is not None
    hypotheses = nonempty and bounded_side != 0 and dqc
    lhs = support_value(inter, g) if nonempty else None
    rhs = inf_convolution_support(s1, s2, g)
    lhs_kind = "minus-infinity" if lhs is None else ("finite" if lhs.finite else "plus-infinity")
    if lhs_kind == "finite" and rhs.kind == "finite":
        equal = lhs.value == rhs.value
        inequality = lhs.value <= rhs.value
    else:
        equal = lhs_kind == rhs.kind
        inequality = _KIND_ORDER[lhs_kind] <= _KIND_ORDER[rhs.kind]
    attained = None
    if hypotheses and lhs_kind == "finite":
        sv1 = support_value(s1, rhs.witness1)
        sv2 = support_value(s2, rhs.witness2)
        attained = sv1.finite and sv2.finite and sv1.value + sv2.value == lhs.value
    if not inequality:
        raise InternalError("one-sided support inequality failed")
    if hypotheses:
        # a bounded side makes the intersection bounded, so lhs is finite
        if lhs_kind != "finite" or not equal or not attained:
            raise InternalError("support identity failed under its hypotheses")
    return SupportIntersectionVerdict(
        hypotheses_met=hypotheses,
        intersection_nonempty=nonempty,
        bounded_side=bounded_side,
        difference_interiority=dqc,
        intersection_support=lhs,
        convolution=rhs,
        equal=equal,
        attained=attained,
        inequality_holds=inequality,
    )


def prop33_hypotheses(s1: ConvexSet, s2: ConvexSet) -> bool:
    """Whether the difference set has interior points and contains the
    origin in its core. Checked on the materialized difference, which
    makes this an independent cross-check of the reach-based tests."""
    _check_dims(s1, s2)
    if s1.is_empty() or s2.is_empty():
        return False
    d = s1.difference(s2)
    if not d.core_contains(zero_vec(s1.dim)):
        return False
    return d.interior_point() is not None
