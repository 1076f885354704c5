"""Independent cross-checks used by the test-suite and the CLI suite runner.

Nothing here reuses solver internals: membership oracles evaluate
constraint rows directly, support values come from vertex enumeration,
and the random generators are built on a hand-rolled linear congruential
generator so that streams are reproducible across platforms and Python
versions.
"""
from __future__ import annotations

import itertools
from dataclasses import replace
from fractions import Fraction

from .errors import InputError, PreconditionError
from .linalg import Vec, dot, l1_norm, vec, vneg, vsub
from .lp import LinearProgram, LpInfeasible, LpOptimal, LpUnbounded, make_program
from .sets import ConvexSet, HRep


class Lcg:
    """Deterministic 64-bit linear congruential generator.

    Constants from Knuth's MMIX stream. Only integer draws are exposed;
    callers build rationals from them so no float ever enters.
    """

    MULT = 6364136223846793005
    INC = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = (seed ^ 0x9E3779B97F4A7C15) & self.MASK
        for _ in range(3):
            self._step()

    def _step(self) -> int:
        self.state = (self.state * self.MULT + self.INC) & self.MASK
        return self.state >> 16

    def below(self, n: int) -> int:
        """Uniform draw from 0..n-1."""
        if n <= 0:
            raise InputError("empty range")
        return self._step() % n

    def int_between(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def fraction(self, span: int = 4, dens: tuple[int, ...] = (1, 1, 2, 3)) -> Fraction:
        return Fraction(self.int_between(-span, span), dens[self.below(len(dens))])

    def choice(self, items):
        return items[self.below(len(items))]


def random_lp(seed: int) -> LinearProgram:
    """Small random LP over free variables with no zero rows and a
    nonzero objective, so every mutation in lp_mutations provably breaks
    the certificate."""
    rng = Lcg(seed)
    dim = rng.int_between(1, 4)
    m1 = rng.int_between(0, 4)
    m2 = rng.int_between(0, 2)
    if m1 + m2 == 0:
        m1 = 1
    while True:
        obj = tuple(rng.fraction() for _ in range(dim))
        if any(obj):
            break
    def row():
        while True:
            a = tuple(rng.fraction() for _ in range(dim))
            if any(a):
                return (a, rng.fraction(span=6))
    return make_program(obj, ineqs=[row() for _ in range(m1)], eqs=[row() for _ in range(m2)])


def lp_mutations(lp: LinearProgram, outcome):
    """Tampered copies of a valid certificate, each one invalid.

    For optimal outcomes: value bumped, point shifted along a coordinate
    the objective sees, one dual bumped. For infeasibility witnesses the
    multipliers are negated, which flips the strict bound. For rays the
    direction is negated, which flips the objective slope.
    """
    out = []
    if isinstance(outcome, LpOptimal):
        out.append(replace(outcome, value=outcome.value + 1))
        k = next(j for j in range(lp.dim) if lp.objective[j])
        shifted = tuple(x + (1 if j == k else 0) for j, x in enumerate(outcome.point))
        out.append(replace(outcome, point=shifted))
        if outcome.dual_ineq:
            bumped = (outcome.dual_ineq[0] + 1,) + outcome.dual_ineq[1:]
            out.append(replace(outcome, dual_ineq=bumped))
        if outcome.dual_eq:
            bumped = (outcome.dual_eq[0] + 1,) + outcome.dual_eq[1:]
            out.append(replace(outcome, dual_eq=bumped))
    elif isinstance(outcome, LpInfeasible):
        out.append(LpInfeasible(
            farkas_ineq=tuple(-y for y in outcome.farkas_ineq),
            farkas_eq=tuple(-z for z in outcome.farkas_eq)))
    elif isinstance(outcome, LpUnbounded):
        out.append(replace(outcome, ray=tuple(-r for r in outcome.ray)))
    return out


# -- random geometry --------------------------------------------------------

ROWS_BY_DIM = {1: 8, 2: 8, 3: 7, 4: 6}


def random_polytope(seed: int, dim: int) -> ConvexSet:
    """Nonempty bounded polyhedron: a box around an anchor point plus a
    few anchored cuts, so emptiness never sneaks in."""
    rng = Lcg(seed)
    anchor = tuple(Fraction(rng.int_between(-2, 2), rng.choice((1, 1, 2))) for _ in range(dim))
    rows = _box_rows(rng, dim, anchor)
    rows += _anchored_cuts(rng, dim, anchor, rng.int_between(0, 3))
    return ConvexSet.from_hrep(dim, ineqs=rows)


def random_pair_with_common_point(seed: int, dim: int):
    """Two polyhedra sharing an anchor point that often sits on both
    boundaries, which is where the interesting verdicts live."""
    rng = Lcg(seed)
    anchor = tuple(Fraction(rng.int_between(-2, 2), rng.choice((1, 1, 2))) for _ in range(dim))
    out = []
    cap = ROWS_BY_DIM.get(dim, 5)
    for _ in range(2):
        rows = _anchored_cuts(rng, dim, anchor, rng.int_between(1, cap))
        if rng.below(2) == 0:
            rows += _box_rows(rng, dim, anchor)
        out.append(ConvexSet.from_hrep(dim, ineqs=rows))
    return out[0], out[1], vec(anchor)


def _box_rows(rng: Lcg, dim: int, anchor) -> list:
    r = Fraction(rng.int_between(1, 3))
    rows = []
    for i in range(dim):
        e = tuple(Fraction(1 if j == i else 0) for j in range(dim))
        rows.append((e, anchor[i] + r))
        rows.append((vneg(e), r - anchor[i]))
    return rows


def _anchored_cuts(rng: Lcg, dim: int, anchor, count: int) -> list:
    rows = []
    while len(rows) < count:
        a = tuple(Fraction(rng.int_between(-3, 3)) for _ in range(dim))
        if not any(a):
            continue
        slack = Fraction(0) if rng.below(3) == 0 else Fraction(rng.int_between(0, 2))
        rows.append((a, dot(vec(a), vec(anchor)) + slack))
    return rows


# -- grid interior oracle ----------------------------------------------------

GRID_RESOLUTION = 401


def grid_cell(half_width) -> Fraction:
    """Spacing of a symmetric grid with GRID_RESOLUTION nodes per axis."""
    return Fraction(2) * Fraction(half_width) / (GRID_RESOLUTION - 1)


def grid_interior_verdict(h: HRep, x, cell: Fraction):
    """Three-valued interior test from raw row evaluation only.

    True and False are proofs; None means the point is too close to a
    row hyperplane for the block to decide. Soundness: if the whole
    3^dim neighbor block lies inside, its hull is a neighborhood of x;
    if a nonzero valid row is tight at x, no neighborhood fits.
    """
    x = vec(x)
    rows = list(h.ineqs)
    for a, b in h.eqs:
        rows.append((a, b))
        rows.append((vneg(a), -b))

    def member(p) -> bool:
        return all(dot(a, p) <= b for a, b in rows)

    if not member(x):
        return False
    if not rows:
        return True
    slack = min((b - dot(a, x)) / l1_norm(a) for a, b in rows)
    if slack == 0:
        return False
    if slack >= cell:
        return True
    block = itertools.product((-cell, Fraction(0), cell), repeat=h.dim)
    if all(member(tuple(xi + di for xi, di in zip(x, d))) for d in block):
        return True
    return None


# -- independent two dimensional geometry -------------------------------------

def hull2d(points) -> tuple[Vec, ...]:
    """Convex hull by the monotone chain, counterclockwise without
    collinear interior points."""
    pts = sorted(set(vec(p) for p in points))
    if len(pts) <= 2:
        return tuple(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def build(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = build(pts)
    upper = build(reversed(pts))
    return tuple(lower[:-1] + upper[:-1])


def hull2d_contains(points, x) -> bool:
    """Membership in a planar hull without any linear programming: the
    hull is unchanged exactly when x was already inside."""
    return hull2d(list(points) + [x]) == hull2d(points)


def rows_2d_from_points(points) -> tuple:
    """Independent planar facet enumeration: homogenize to a cone in
    three dimensions and read facet normals off generator cross
    products."""
    pts = [vec(p) for p in points]
    if not pts:
        raise PreconditionError("no points to bound")
    gens = [(p[0], p[1], Fraction(1)) for p in pts]
    rows = []
    for g, h in itertools.combinations(gens, 2):
        n = (
            g[1] * h[2] - g[2] * h[1],
            g[2] * h[0] - g[0] * h[2],
            g[0] * h[1] - g[1] * h[0],
        )
        if not any(n):
            continue
        for cand in (n, tuple(-v for v in n)):
            if all(sum(c * gi for c, gi in zip(cand, gg)) <= 0 for gg in gens):
                a = (cand[0], cand[1])
                if any(a) and (a, -cand[2]) not in rows:
                    rows.append((a, -cand[2]))
    return tuple(rows)


def materialized_difference_2d(s1: ConvexSet, s2: ConvexSet):
    """Hull of pairwise vertex differences of two bounded planar sets;
    an oracle route that never touches the library's set algebra."""
    v1, v2 = s1.canonical_vrep(), s2.canonical_vrep()
    if v1.rays or v2.rays:
        raise PreconditionError("difference oracle needs bounded sets")
    diffs = [tuple(a - b for a, b in zip(p, q)) for p in v1.vertices for q in v2.vertices]
    return hull2d(diffs)


# -- support and normal cone oracles ------------------------------------------

def vertex_support_oracle(s: ConvexSet, direction):
    """Support value by brute force over canonical generators: None
    stands for an empty set, +infinity is signalled by a ray with
    positive product."""
    d = vec(direction)
    v = s.canonical_vrep()
    if not v.vertices:
        return None
    if any(dot(d, r) > 0 for r in v.rays):
        return "unbounded"
    return max(dot(d, p) for p in v.vertices)


def definition_normal_cone_oracle(s: ConvexSet, x, g) -> bool:
    """Is g a normal direction at x per the definition: no point of the
    set sees a positive product with g relative to x."""
    x, g = vec(x), vec(g)
    v = s.canonical_vrep()
    return all(dot(g, vsub(p, x)) <= 0 for p in v.vertices) and all(
        dot(g, r) <= 0 for r in v.rays)
