"""Extremal systems of convex polyhedra, with checkable certificates.

Two nonempty sets form an extremal system when arbitrarily small
translations of the first set make the pair disjoint. For closed
polyhedra this happens exactly when the origin is not interior to the
Minkowski difference of the sets, so every check here reduces to exact
questions about that difference set: a valid row separating the origin
from it yields perturbations and separating functionals, while a box
around the origin inside it refutes extremality with a concrete radius.

The approximate principle is realized as one linear program. Instead of
an iterative descent, the gap between the translated sets is minimized
globally together with a small penalty that anchors the minimizer near
the reference point; the dual multipliers of the gap rows assemble the
pair of opposite unit functionals directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cones import ep_condition, normal_cone
from .errors import InputError, InternalError, PolyhedralError, PreconditionError
from .linalg import (
    Vec,
    dot,
    frac,
    l1_norm,
    linf_norm,
    vadd,
    vec,
    vneg,
    vscale,
    vsub,
    zero_vec,
)
from .lp import LpInfeasible, LpOptimal, make_program, solve_lp
from .sets import ConvexSet

Row = tuple[Vec, Fraction]

EPSILON_GRID = (Fraction(1), Fraction(1, 2), Fraction(1, 10), Fraction(1, 100))


@dataclass(frozen=True)
class ExtremalityVerdict:
    """Outcome of the extremality test for a pair of nonempty sets.

    Exactly one certificate side is populated. When the pair is extremal,
    boundary_evidence is a row (g, beta) with g.x <= beta valid on the
    difference set and beta <= 0, which excludes the origin from its
    interior; a verified perturbation for a requested epsilon may ride
    along. Otherwise interior_ball_radius is a rational r > 0 such that
    the closed sup-norm ball of radius r around the origin lies inside
    the difference set.
    """

    extremal: bool
    difference: ConvexSet = field(compare=False)
    boundary_evidence: Row | None
    interior_ball_radius: Fraction | None
    epsilon: Fraction | None = None
    perturbation: Vec | None = None


@dataclass(frozen=True)
class SeparationCertificate:
    """Nonzero functional with sup over the first set at most inf over
    the second; both bounds are recomputed exactly."""

    functional: Vec
    sup1: Fraction
    inf2: Fraction


@dataclass(frozen=True)
class ApproxEpCertificate:
    """Approximate dual certificate at scale epsilon.

    Invariants, all exact: x1 and x2 lie in their sets within a sup-norm
    epsilon box around the reference point; xstar1 + xstar2 = 0 with
    l1 norm one each; xstar_i = normal_i + error_i where normal_i lies
    in the normal cone of set i at x_i and l1(error_i) <= epsilon.
    """

    epsilon: Fraction
    x1: Vec
    x2: Vec
    xstar1: Vec
    xstar2: Vec
    normal1: Vec
    error1: Vec
    normal2: Vec
    error2: Vec


def _check_pair(s1: ConvexSet, s2: ConvexSet) -> None:
    if s1.dim != s2.dim:
        raise InputError("sets live in different dimensions")
    if s1.is_empty() or s2.is_empty():
        raise PreconditionError("both sets must be nonempty")


def _boundary_evidence(d: ConvexSet) -> Row | None:
    """A valid row (g, beta) of the difference set with beta <= 0, or
    None when the origin is interior. Equality rows are oriented so the
    right hand side is nonpositive; ties break lexicographically."""
    h = d.canonical_hrep()
    candidates = []
    for a, b in h.eqs:
        if b > 0:
            candidates.append((vneg(a), -b))
        else:
            candidates.append((a, b))
            if b == 0:
                candidates.append((vneg(a), b))
    for a, b in h.ineqs:
        if b <= 0:
            candidates.append((a, b))
    if not candidates:
        return None
    return min(candidates)


def _interior_radius(d: ConvexSet) -> Fraction:
    """Certified r with the closed sup-norm ball of radius r around the
    origin inside d, assuming the origin is interior. Works on the raw
    rows: the bound b / l1(a) is valid for any description and does not
    need the canonical one, which is expensive for materialized
    difference sets."""
    h = d.hrep()
    if h.eqs:
        raise InternalError("interior point in a flat set")
    radii = [b / l1_norm(a) for a, b in h.ineqs]
    r = min(radii) if radii else Fraction(1)
    if r <= 0:
        raise InternalError("nonpositive slack at a claimed interior point")
    return r


def is_extremal_system(s1: ConvexSet, s2: ConvexSet,
                       epsilon=None) -> ExtremalityVerdict:
    """Decide extremality of a pair of nonempty sets.

    The difference set is materialized and the verdict is literally
    whether the origin fails to be interior to it. When epsilon is given
    and the pair is extremal, a verified perturbation of that size is
    attached to the verdict.
    """
    _check_pair(s1, s2)
    d = s1.difference(s2)
    if d.interior_contains(zero_vec(s1.dim)):
        return ExtremalityVerdict(False, d, None, _interior_radius(d))
    evidence = _boundary_evidence(d)
    if evidence is None:
        raise InternalError("origin not interior yet no supporting row found")
    eps = pert = None
    if epsilon is not None:
        eps = frac(epsilon)
        if eps <= 0:
            raise InputError("epsilon must be positive")
        pert = _verified_perturbation(s1, s2, evidence, eps)
    return ExtremalityVerdict(True, d, evidence, None, eps, pert)


def _verified_perturbation(s1: ConvexSet, s2: ConvexSet,
                           evidence: Row, eps: Fraction) -> Vec:
    g, _ = evidence
    a = vscale(-eps / linf_norm(g), g)
    for _ in range(64):
        if s1.translate(a).intersect(s2).is_empty():
            return a
        a = vscale(Fraction(1, 2), a)
    raise InternalError("no verified translation after 64 halvings")


def find_perturbation(s1: ConvexSet, s2: ConvexSet, epsilon) -> Vec:
    """Translation a with sup-norm at most epsilon making the translated
    first set disjoint from the second, verified by an emptiness check.

    The direction comes from a valid row separating the origin from the
    difference set, so the first candidate already works; the halving
    retry is kept as a guard and failing it is an internal error.
    """
    _check_pair(s1, s2)
    eps = frac(epsilon)
    if eps <= 0:
        raise InputError("epsilon must be positive")
    evidence = _boundary_evidence(s1.difference(s2))
    if evidence is None:
        raise PreconditionError("the sets do not form an extremal system")
    return _verified_perturbation(s1, s2, evidence, eps)


def _sup(s: ConvexSet, g: Vec) -> Fraction:
    h = s.hrep()
    out = solve_lp(make_program(vneg(g), ineqs=h.ineqs, eqs=h.eqs))
    if isinstance(out, LpOptimal):
        return -out.value
    raise InternalError("support value is not finite where it must be")


def separate(s1: ConvexSet, s2: ConvexSet) -> SeparationCertificate | None:
    """Separating functional for the pair, or None when none exists.

    The functional is the normal of the evidence row of the difference
    set; validity of that row forces sup over the first set to stay
    below inf over the second, and both values are finite because both
    sets are nonempty.
    """
    _check_pair(s1, s2)
    d = s1.difference(s2)
    # an interior origin settles the answer without canonicalizing the
    # difference, which is the expensive step on fat instances
    if d.interior_contains(zero_vec(d.dim)):
        return None
    evidence = _boundary_evidence(d)
    if evidence is None:
        return None
    g, _ = evidence
    sup1 = _sup(s1, g)
    inf2 = -_sup(s2, vneg(g))
    if sup1 > inf2:
        raise InternalError("evidence row failed to separate the sets")
    return SeparationCertificate(g, sup1, inf2)


def check_sufficient_interiority(s1: ConvexSet, s2: ConvexSet) -> bool:
    """True when the first set has interior points and none of them lies
    in the second set. The check inflates a slack variable over the rows
    of the first set while staying inside the second; a positive best
    slack is exactly an interior meeting point."""
    if s1.dim != s2.dim:
        raise InputError("sets live in different dimensions")
    if s1.is_empty():
        return False
    ch = s1.canonical_hrep()
    if ch.eqs:
        return False
    n = s1.dim
    h2 = s2.hrep()
    rows = [(tuple(a) + (Fraction(0),), b) for a, b in h2.ineqs]
    eqs = [(tuple(a) + (Fraction(0),), b) for a, b in h2.eqs]
    for a, b in ch.ineqs:
        rows.append((tuple(a) + (l1_norm(a),), b))
    rows.append((zero_vec(n) + (Fraction(1),), Fraction(1)))
    out = solve_lp(make_program(zero_vec(n) + (Fraction(-1),), ineqs=rows, eqs=eqs))
    if isinstance(out, LpInfeasible):
        return True
    if isinstance(out, LpOptimal):
        return -out.value <= 0
    raise InternalError("capped slack program cannot be unbounded")


def _penalized_gap_minimum(s1: ConvexSet, s2: ConvexSet, xbar: Vec,
                           a: Vec, eps: Fraction):
    """Minimize the sup-norm gap of the translated pair plus an epsilon
    penalty on the distance of each point from xbar.

    Returns the minimizing points, the unit subgradient s of the gap
    norm read off the dual multipliers, and the normal-cone components
    of the stationarity identity for each block.
    """
    n = s1.dim
    h1, h2 = s1.hrep(), s2.hrep()
    width = 2 * n + 3
    it, ip, iq = 2 * n, 2 * n + 1, 2 * n + 2

    def embed(row, offset, extra, coef):
        out = [Fraction(0)] * width
        for j, c in enumerate(row):
            out[offset + j] = c
        if extra is not None:
            out[extra] = coef
        return out

    rows = []
    for av, b in h1.ineqs:
        rows.append((embed(av, 0, None, None), b))
    for av, b in h2.ineqs:
        rows.append((embed(av, n, None, None), b))
    for j in range(n):
        plus = [Fraction(0)] * width
        plus[j], plus[n + j], plus[it] = Fraction(1), Fraction(-1), Fraction(-1)
        rows.append((plus, -a[j]))
        minus = [Fraction(0)] * width
        minus[j], minus[n + j], minus[it] = Fraction(-1), Fraction(1), Fraction(-1)
        rows.append((minus, a[j]))
    for j in range(n):
        rows.append((embed((Fraction(1),), j, ip, Fraction(-1)), xbar[j]))
        rows.append((embed((Fraction(-1),), j, ip, Fraction(-1)), -xbar[j]))
    for j in range(n):
        rows.append((embed((Fraction(1),), n + j, iq, Fraction(-1)), xbar[j]))
        rows.append((embed((Fraction(-1),), n + j, iq, Fraction(-1)), -xbar[j]))
    eqs = [(embed(av, 0, None, None), b) for av, b in h1.eqs]
    eqs += [(embed(av, n, None, None), b) for av, b in h2.eqs]
    obj = [Fraction(0)] * width
    obj[it], obj[ip], obj[iq] = Fraction(1), eps, eps
    out = solve_lp(make_program(obj, ineqs=rows, eqs=eqs))
    if not isinstance(out, LpOptimal):
        raise InternalError("penalized gap program must attain its minimum")
    x1, x2 = out.point[:n], out.point[n:2 * n]
    if out.point[it] <= 0:
        raise InternalError("zero gap contradicts the verified disjointness")
    m1, m2 = len(h1.ineqs), len(h2.ineqs)
    y, z = out.dual_ineq, out.dual_eq
    base = m1 + m2
    s = tuple(y[base + 2 * j] - y[base + 2 * j + 1] for j in range(n))
    if l1_norm(s) != 1:
        raise InternalError("gap multipliers do not form a unit functional")
    e1 = len(h1.eqs)
    n1 = zero_vec(n)
    for yi, (av, _) in zip(y[:m1], h1.ineqs):
        if yi:
            n1 = vadd(n1, vscale(yi, av))
    for zi, (av, _) in zip(z[:e1], h1.eqs):
        if zi:
            n1 = vsub(n1, vscale(zi, av))
    n2 = zero_vec(n)
    for yi, (av, _) in zip(y[m1:m1 + m2], h2.ineqs):
        if yi:
            n2 = vadd(n2, vscale(yi, av))
    for zi, (av, _) in zip(z[e1:], h2.eqs):
        if zi:
            n2 = vsub(n2, vscale(zi, av))
    return x1, x2, s, n1, n2


def approximate_extremal_principle(s1: ConvexSet, s2: ConvexSet, xbar,
                                   epsilon) -> ApproxEpCertificate:
    """Produce the epsilon-scale dual certificate at a common point of an
    extremal pair and verify it before returning.

    A perturbation of size epsilon squared separates the translated
    sets; minimizing the penalized gap keeps the minimizers within
    epsilon of the reference point, and the dual multipliers of the gap
    rows form the opposite unit functionals. When those functionals
    already sit in the normal cones exactly, the error parts are zero;
    otherwise the cone components from the dual stationarity identity
    are used, with errors of l1 norm at most epsilon.
    """
    _check_pair(s1, s2)
    eps = frac(epsilon)
    if eps <= 0:
        raise InputError("epsilon must be positive")
    x = vec(xbar)
    if len(x) != s1.dim:
        raise InputError(f"point has {len(x)} coordinates, expected {s1.dim}")
    if not (s1.contains(x) and s2.contains(x)):
        raise PreconditionError("the reference point must lie in both sets")
    evidence = _boundary_evidence(s1.difference(s2))
    if evidence is None:
        raise PreconditionError("the sets do not form an extremal system")
    a = _verified_perturbation(s1, s2, evidence, eps * eps)
    x1, x2, s, n1, n2 = _penalized_gap_minimum(s1, s2, x, a, eps)
    xstar1, xstar2 = vneg(s), s
    zero = zero_vec(s1.dim)
    if normal_cone(s1, x1).contains(xstar1) and normal_cone(s2, x2).contains(xstar2):
        cert = ApproxEpCertificate(eps, x1, x2, xstar1, xstar2,
                                   xstar1, zero, xstar2, zero)
    else:
        cert = ApproxEpCertificate(eps, x1, x2, xstar1, xstar2,
                                   n1, vsub(xstar1, n1), n2, vsub(xstar2, n2))
    if not verify_approx_ep(s1, s2, x, cert):
        raise InternalError("certificate failed its own verification")
    return cert


def verify_approx_ep(s1: ConvexSet, s2: ConvexSet, xbar,
                     cert: ApproxEpCertificate) -> bool:
    """Exact recheck of every certificate condition; malformed input
    counts as failure rather than an error."""
    try:
        eps = frac(cert.epsilon)
        x = vec(xbar)
        for pt, s in ((cert.x1, s1), (cert.x2, s2)):
            if not s.contains(pt):
                return False
            if linf_norm(vsub(vec(pt), x)) > eps:
                return False
        if vadd(vec(cert.xstar1), vec(cert.xstar2)) != zero_vec(len(x)):
            return False
        if l1_norm(cert.xstar1) != 1 or l1_norm(cert.xstar2) != 1:
            return False
        for pt, s, star, nrm, err in (
            (cert.x1, s1, cert.xstar1, cert.normal1, cert.error1),
            (cert.x2, s2, cert.xstar2, cert.normal2, cert.error2),
        ):
            if vadd(vec(nrm), vec(err)) != vec(star):
                return False
            if l1_norm(vec(err)) > eps:
                return False
            if not normal_cone(s, pt).contains(nrm):
                return False
        return True
    except (PolyhedralError, TypeError, ValueError, ZeroDivisionError):
        return False


def exact_extremal_principle(s1: ConvexSet, s2: ConvexSet, xbar) -> Vec | None:
    """Nonzero functional in the normal cone of the first set at xbar
    whose negation is normal to the second set there, or None. For
    polyhedral pairs with a common point this exists exactly when the
    pair is extremal."""
    found, witness = ep_condition(s1, s2, xbar)
    return witness if found else None


def support_point_near(s: ConvexSet, xbar, epsilon) -> tuple[Vec, Vec]:
    """Supporting functional at a boundary point.

    For polyhedra the boundary point itself is a support point: some
    canonical row is tight there, and its normal attains its supremum
    over the set at the point. The epsilon tolerance is validated but
    the returned point is always xbar, at distance zero.
    """
    eps = frac(epsilon)
    if eps <= 0:
        raise InputError("epsilon must be positive")
    x = vec(xbar)
    if len(x) != s.dim:
        raise InputError(f"point has {len(x)} coordinates, expected {s.dim}")
    if not s.contains(x):
        raise PreconditionError("the point lies outside the set")
    if s.interior_contains(x):
        raise PreconditionError("the point is interior, not on the boundary")
    h = s.canonical_hrep()
    candidates = []
    for a, _ in h.eqs:
        candidates.append(a)
        candidates.append(vneg(a))
    for a, b in h.ineqs:
        if dot(a, x) == b:
            candidates.append(a)
    if not candidates:
        raise InternalError("boundary point with no tight canonical row")
    g = min(candidates)
    if _sup(s, g) != dot(g, x):
        raise InternalError("chosen functional misses its supremum at the point")
    return x, g
