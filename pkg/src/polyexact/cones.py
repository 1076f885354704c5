"""Finitely generated cones and normal cones of polyhedra.

Cones are stored in a canonical shape: the lineality space gets a
reduced-echelon basis, remaining generators are reduced modulo that
space, scaled so the leading coordinate has absolute value one,
deduplicated, pruned to the extreme rays, and sorted. Two cones are
equal as sets exactly when their canonical fields coincide; the
semantic check cones_equal is still done by mutual membership so the
canonical form stays a tested invariant rather than an assumption.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import dd
from .errors import PreconditionError
from .lp import NONNEG, LpOptimal, make_program, solve_lp
from .linalg import (
    Vec,
    is_zero_vec,
    reduce_mod_subspace,
    rref,
    vec,
    vneg,
    zero_vec,
)
from .sets import ConvexSet


@dataclass(frozen=True)
class PolyhedralCone:
    dim: int
    generators: tuple[Vec, ...]
    lineality: tuple[Vec, ...]

    def is_trivial(self) -> bool:
        return not self.generators and not self.lineality

    def contains(self, x) -> bool:
        x = vec(x)
        if len(x) != self.dim:
            return False
        return _conic_membership(self.generators, self.lineality, x)

    def sample_directions(self) -> tuple[Vec, ...]:
        """Nonzero members spanning the cone, lineality in both signs."""
        out = list(self.generators)
        for l in self.lineality:
            out.append(l)
            out.append(vneg(l))
        return tuple(out)


def _conic_membership(gens, lin, x: Vec) -> bool:
    if is_zero_vec(x):
        return True
    if not gens and not lin:
        return False
    dim = len(x)
    cols = list(gens) + list(lin)
    eqs = [([g[j] for g in cols], x[j]) for j in range(dim)]
    signs = [NONNEG] * len(gens) + [0] * len(lin)
    lp = make_program([0] * len(cols), eqs=eqs, signs=signs)
    return isinstance(solve_lp(lp), LpOptimal)


def make_cone(dim: int, generators=(), lineality=()) -> PolyhedralCone:
    """Canonicalize cone(generators) + span(lineality).

    Zero vectors are dropped. Generators whose negation also lies in the
    cone are moved into the lineality space; the rest are reduced modulo
    it and pruned to the extreme rays.
    """
    gens = [vec(g) for g in generators if not is_zero_vec(vec(g))]
    lin = [vec(l) for l in lineality if not is_zero_vec(vec(l))]
    flagged = []
    pointed = []
    for g in gens:
        if _conic_membership(gens, lin, vneg(g)):
            flagged.append(g)
        else:
            pointed.append(g)
    lin_rows, pivots = rref([list(l) for l in lin + flagged])
    canon_lin = tuple(tuple(row) for row in lin_rows)
    seen = []
    for g in pointed:
        r = reduce_mod_subspace(g, lin_rows, pivots)
        if is_zero_vec(r):
            continue
        lead = next(x for x in r if x != 0)
        r = tuple(x / abs(lead) for x in r)
        if r not in seen:
            seen.append(r)
    survivors = list(seen)
    for g in list(survivors):
        others = [h for h in survivors if h is not g]
        if _conic_membership(others, canon_lin, g):
            survivors.remove(g)
    return PolyhedralCone(dim, tuple(sorted(survivors)), tuple(sorted(canon_lin)))


def cone_negate(c: PolyhedralCone) -> PolyhedralCone:
    return PolyhedralCone(c.dim, tuple(sorted(vneg(g) for g in c.generators)), c.lineality)


def cone_sum(a: PolyhedralCone, b: PolyhedralCone) -> PolyhedralCone:
    _same_dim(a, b)
    return make_cone(a.dim, a.generators + b.generators, a.lineality + b.lineality)


def cone_rows(c: PolyhedralCone) -> tuple[Vec, ...]:
    """Inequality normals a with c = {x : a.x <= 0 for all a}."""
    gens = list(c.generators)
    for l in c.lineality:
        gens.append(l)
        gens.append(vneg(l))
    if not gens:
        # only the origin: pin every coordinate
        rows = []
        for i in range(c.dim):
            e = tuple(Fraction(1 if j == i else 0) for j in range(c.dim))
            rows.append(e)
            rows.append(vneg(e))
        return tuple(rows)
    rays, lin = dd.cone_from_inequalities(gens, c.dim)
    rows = list(rays)
    for l in lin:
        rows.append(l)
        rows.append(vneg(l))
    return tuple(rows)


def cone_intersect(a: PolyhedralCone, b: PolyhedralCone) -> PolyhedralCone:
    _same_dim(a, b)
    rows = list(cone_rows(a)) + list(cone_rows(b))
    rays, lin = dd.cone_from_inequalities(rows, a.dim)
    return make_cone(a.dim, rays, lin)


def cones_equal(a: PolyhedralCone, b: PolyhedralCone) -> bool:
    if a.dim != b.dim:
        return False
    return (
        all(b.contains(g) for g in a.sample_directions())
        and all(a.contains(g) for g in b.sample_directions())
    )


def cone_sum_decompose(a: PolyhedralCone, b: PolyhedralCone, x) -> tuple[Vec, Vec] | None:
    """Split x into a member of each cone, or None when x is outside
    the sum. The split certifies membership in cone_sum(a, b)."""
    _same_dim(a, b)
    x = vec(x)
    cols = (list(a.generators) + list(a.lineality)
            + list(b.generators) + list(b.lineality))
    if not cols:
        return (x, zero_vec(a.dim)) if is_zero_vec(x) else None
    eqs = [([g[j] for g in cols], x[j]) for j in range(a.dim)]
    signs = ([NONNEG] * len(a.generators) + [0] * len(a.lineality)
             + [NONNEG] * len(b.generators) + [0] * len(b.lineality))
    out = solve_lp(make_program([0] * len(cols), eqs=eqs, signs=signs))
    if not isinstance(out, LpOptimal):
        return None
    na = len(a.generators) + len(a.lineality)
    ya = zero_vec(a.dim)
    for coef, g in zip(out.point[:na], cols[:na]):
        if coef:
            ya = tuple(u + coef * v for u, v in zip(ya, g))
    yb = tuple(xi - ui for xi, ui in zip(x, ya))
    return ya, yb


def normal_cone(s: ConvexSet, x) -> PolyhedralCone:
    """Normal cone of the set at a point of it.

    With a row description this is the cone of the active normals; with
    generators it is the set of functionals maximized over the set at x,
    computed by the double description method on the shifted generators.
    """
    if s._hrep is not None:
        rows = s.active_rows(x)
        return make_cone(s.dim, rows)
    x = vec(x)
    if not s.contains(x):
        raise PreconditionError("point is not in the set")
    v = s._vrep
    rows = [vec(tuple(a - b for a, b in zip(p, x))) for p in v.vertices]
    rows += [vec(r) for r in v.rays]
    rays, lin = dd.cone_from_inequalities([r for r in rows if not is_zero_vec(r)], s.dim)
    return make_cone(s.dim, rays, lin)


def extremal_intersection_condition(n1: PolyhedralCone, n2: PolyhedralCone):
    """Nonzero common direction of the first cone and the negation of
    the second, or None. For normal cones at a shared point such a
    direction is a dual witness of separation."""
    _same_dim(n1, n2)
    k = cone_intersect(n1, cone_negate(n2))
    if k.generators:
        return k.generators[0]
    if k.lineality:
        return k.lineality[0]
    return None


def ep_condition(s1: ConvexSet, s2: ConvexSet, xbar):
    """Nontrivial common normal at a shared point.

    Returns (found, witness): a nonzero functional lying in the normal
    cone of the first set at xbar whose negation lies in the normal cone
    of the second, or (False, None) when only the zero functional does.
    """
    x = vec(xbar)
    if not (s1.contains(x) and s2.contains(x)):
        raise PreconditionError("the point must belong to both sets")
    w = extremal_intersection_condition(normal_cone(s1, x), normal_cone(s2, x))
    return (w is not None), w


def _same_dim(a: PolyhedralCone, b: PolyhedralCone) -> None:
    if a.dim != b.dim:
        raise PreconditionError("cones live in different dimensions")
