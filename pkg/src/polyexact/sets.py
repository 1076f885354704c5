"""Convex polyhedra over exact rationals.

A ConvexSet wraps one or both descriptions of the same polyhedron: rows
(HRep) and generators (VRep). Predicates prefer whichever raw form
answers directly; the missing form is derived on first use and cached
behind a lock. Canonicalization promotes implicit equalities, reduces
inequality rows modulo the equality space, rescales, deduplicates,
prunes rows that other rows imply, and sorts, so equal sets have equal
canonical forms and reports stay byte-stable.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from . import dd
from .errors import InputError, PreconditionError
from .lp import NONNEG, LpOptimal, LpUnbounded, make_program, solve_lp
from .linalg import (
    Vec,
    dot,
    frac,
    is_zero_vec,
    l1_norm,
    rref,
    reduce_mod_subspace,
    unit_vec,
    vec,
    vneg,
    zero_vec,
)

Row = tuple[Vec, Fraction]


@dataclass(frozen=True)
class HRep:
    dim: int
    ineqs: tuple[Row, ...]
    eqs: tuple[Row, ...]


@dataclass(frozen=True)
class VRep:
    dim: int
    vertices: tuple[Vec, ...]
    rays: tuple[Vec, ...]


def _check_dim(dim: int) -> None:
    if not isinstance(dim, int) or dim < 1:
        raise InputError(f"dimension must be a positive integer, got {dim!r}")
    if dim > dd.MAX_DIM:
        raise InputError(f"dimension {dim} exceeds the supported limit {dd.MAX_DIM}")


def make_hrep(dim: int, ineqs=(), eqs=()) -> HRep:
    """Rows (normal, rhs) meaning normal.x <= rhs, or = for eqs.

    A zero normal is only accepted when the row is trivially true, and
    such rows are dropped.
    """
    _check_dim(dim)
    def rows(pairs, eq):
        out = []
        for a, b in pairs:
            a, b = vec(a), frac(b)
            if len(a) != dim:
                raise InputError(f"row has {len(a)} coefficients, expected {dim}")
            if is_zero_vec(a):
                trivial = (b == 0) if eq else (b >= 0)
                if not trivial:
                    raise InputError("zero normal with a falsifying right hand side")
                continue
            out.append((a, b))
        return tuple(out)
    return HRep(dim, rows(ineqs, False), rows(eqs, True))


def make_vrep(dim: int, vertices=(), rays=()) -> VRep:
    """Generators: conv(vertices) + cone(rays). No vertices means the
    empty set, in which case rays must be absent too."""
    _check_dim(dim)
    vs = tuple(vec(v) for v in vertices)
    rs = tuple(vec(r) for r in rays)
    for v in vs:
        if len(v) != dim:
            raise InputError(f"vertex has {len(v)} coordinates, expected {dim}")
    for r in rs:
        if len(r) != dim:
            raise InputError(f"ray has {len(r)} coordinates, expected {dim}")
        if is_zero_vec(r):
            raise InputError("zero vector is not a direction")
    if not vs and rs:
        raise InputError("recession directions without any point")
    return VRep(dim, vs, rs)


class ConvexSet:
    """A polyhedron with lazily synchronized dual descriptions."""

    def __init__(self, hrep: HRep | None = None, vrep: VRep | None = None):
        if hrep is None and vrep is None:
            raise InputError("a set needs at least one description")
        if hrep is not None and vrep is not None and hrep.dim != vrep.dim:
            raise InputError("descriptions disagree on dimension")
        self.dim = hrep.dim if hrep is not None else vrep.dim
        self._hrep = hrep
        self._vrep = vrep
        self._canonical_hrep: HRep | None = None
        self._canonical_vrep: VRep | None = None
        self._lock = threading.RLock()

    @classmethod
    def from_hrep(cls, dim: int, ineqs=(), eqs=()) -> "ConvexSet":
        return cls(hrep=make_hrep(dim, ineqs, eqs))

    @classmethod
    def from_vrep(cls, dim: int, vertices=(), rays=()) -> "ConvexSet":
        return cls(vrep=make_vrep(dim, vertices, rays))

    def __repr__(self) -> str:
        parts = [f"dim={self.dim}"]
        if self._hrep is not None:
            parts.append(f"rows={len(self._hrep.ineqs)}+{len(self._hrep.eqs)}eq")
        if self._vrep is not None:
            parts.append(f"gens={len(self._vrep.vertices)}+{len(self._vrep.rays)}ray")
        return f"ConvexSet({', '.join(parts)})"

    # -- description access -------------------------------------------------

    def hrep(self) -> HRep:
        if self._hrep is None:
            with self._lock:
                if self._hrep is None:
                    v = self._vrep
                    ineqs, eqs = dd.generators_to_hrep(v.vertices, v.rays, (), v.dim)
                    self._hrep = make_hrep(v.dim, ineqs, eqs)
        return self._hrep

    def vrep(self) -> VRep:
        if self._vrep is None:
            with self._lock:
                if self._vrep is None:
                    h = self._hrep
                    pts, rays, lin = dd.hrep_to_generators(h.ineqs, h.eqs, h.dim)
                    expanded = tuple(rays) + tuple(lin) + tuple(vneg(l) for l in lin)
                    self._vrep = make_vrep(h.dim, pts, expanded)
        return self._vrep

    # -- basic predicates ---------------------------------------------------

    def contains(self, x) -> bool:
        x = self._point(x)
        if self._hrep is not None:
            h = self._hrep
            return all(dot(a, x) <= b for a, b in h.ineqs) and all(
                dot(a, x) == b for a, b in h.eqs)
        v = self._vrep
        return _generator_membership(v.vertices, v.rays, x)

    def interior_contains(self, x) -> bool:
        """Topological interior. Correct on any row description: a set
        with implicit equalities leaves no point strictly inside every
        row, and an explicit equality row empties the interior."""
        x = self._point(x)
        h = self.hrep()
        if h.eqs:
            return False
        return all(dot(a, x) < b for a, b in h.ineqs)

    def core_contains(self, x) -> bool:
        """Algebraic interior, checked from its definition: the point
        must absorb a segment in both orientations of every coordinate
        direction. For a convex set the hull of those segments is a
        neighborhood, so spanning directions suffice."""
        x = self._point(x)
        if not self.contains(x):
            return False
        for i in range(self.dim):
            for sign in (1, -1):
                if self._segment_reach(x, unit_vec(self.dim, i, sign)) <= 0:
                    return False
        return True

    def _segment_reach(self, x: Vec, d: Vec) -> Fraction:
        """max t in [0,1] with x + t d inside, computed on rows."""
        h = self.hrep()
        # one scalar variable t: a.(x + t d) <= b  ->  (a.d) t <= b - a.x
        rows = [((dot(a, d),), b - dot(a, x)) for a, b in h.ineqs]
        rows.append(((Fraction(1),), Fraction(1)))
        eqs = []
        for a, b in h.eqs:
            eqs.append(((dot(a, d),), b - dot(a, x)))
        out = solve_lp(make_program([-1], ineqs=rows, eqs=eqs, signs=[NONNEG]))
        if not isinstance(out, LpOptimal):
            return Fraction(0)
        return -out.value

    def is_empty(self) -> bool:
        if self._vrep is not None:
            return not self._vrep.vertices
        h = self._hrep
        out = solve_lp(make_program(zero_vec(h.dim), ineqs=h.ineqs, eqs=h.eqs))
        return not isinstance(out, (LpOptimal, LpUnbounded))

    def is_bounded(self) -> bool:
        if self.is_empty():
            return True
        if self._vrep is not None:
            return not self._vrep.rays
        h = self._hrep
        rec_rows = [(a, Fraction(0)) for a, b in h.ineqs]
        rec_eqs = [(a, Fraction(0)) for a, b in h.eqs]
        for i in range(self.dim):
            for sign in (1, -1):
                obj = unit_vec(self.dim, i, -sign)
                out = solve_lp(make_program(obj, ineqs=rec_rows, eqs=rec_eqs))
                if isinstance(out, LpUnbounded):
                    return False
                if isinstance(out, LpOptimal) and out.value != 0:
                    return False
        return True

    def interior_point(self) -> Vec | None:
        """A point with positive row slack everywhere, or None when the
        interior is empty. Found by inflating a box inside the rows."""
        h = self.hrep()
        if h.eqs:
            return None
        rows = []
        for a, b in h.ineqs:
            rows.append((tuple(a) + (l1_norm(a),), b))
        rows.append((zero_vec(self.dim) + (Fraction(1),), Fraction(1)))
        obj = zero_vec(self.dim) + (Fraction(-1),)
        out = solve_lp(make_program(obj, ineqs=rows))
        if isinstance(out, LpOptimal) and -out.value > 0:
            return out.point[: self.dim]
        return None

    def active_rows(self, x) -> tuple[Vec, ...]:
        """Normals of the raw inequality rows tight at x, plus both
        orientations of every equality row."""
        x = self._point(x)
        if not self.contains(x):
            raise PreconditionError("point is not in the set")
        h = self.hrep()
        out = [a for a, b in h.ineqs if dot(a, x) == b]
        for a, b in h.eqs:
            out.append(a)
            out.append(vneg(a))
        return tuple(out)

    # -- constructions ------------------------------------------------------

    def translate(self, t) -> "ConvexSet":
        t = self._point(t)
        hrep = vrep = None
        if self._hrep is not None:
            h = self._hrep
            hrep = HRep(h.dim,
                        tuple((a, b + dot(a, t)) for a, b in h.ineqs),
                        tuple((a, b + dot(a, t)) for a, b in h.eqs))
        if self._vrep is not None:
            v = self._vrep
            vrep = VRep(v.dim, tuple(vec_add(p, t) for p in v.vertices), v.rays)
        return ConvexSet(hrep=hrep, vrep=vrep)

    def negate(self) -> "ConvexSet":
        hrep = vrep = None
        if self._hrep is not None:
            h = self._hrep
            hrep = HRep(h.dim,
                        tuple((vneg(a), b) for a, b in h.ineqs),
                        tuple((vneg(a), b) for a, b in h.eqs))
        if self._vrep is not None:
            v = self._vrep
            vrep = VRep(v.dim,
                        tuple(vneg(p) for p in v.vertices),
                        tuple(vneg(r) for r in v.rays))
        return ConvexSet(hrep=hrep, vrep=vrep)

    def intersect(self, other: "ConvexSet") -> "ConvexSet":
        self._same_dim(other)
        a, b = self.hrep(), other.hrep()
        return ConvexSet(hrep=HRep(self.dim, a.ineqs + b.ineqs, a.eqs + b.eqs))

    def minkowski(self, other: "ConvexSet") -> "ConvexSet":
        self._same_dim(other)
        a, b = self.vrep(), other.vrep()
        if not a.vertices or not b.vertices:
            return ConvexSet(vrep=VRep(self.dim, (), ()))
        seen = []
        for p in a.vertices:
            for q in b.vertices:
                s = vec_add(p, q)
                if s not in seen:
                    seen.append(s)
        rays = []
        for r in a.rays + b.rays:
            if r not in rays:
                rays.append(r)
        return ConvexSet(vrep=VRep(self.dim, tuple(seen), tuple(rays)))

    def difference(self, other: "ConvexSet") -> "ConvexSet":
        """The set of pairwise differences self - other."""
        return self.minkowski(other.negate())

    # -- canonical forms ----------------------------------------------------

    def canonical_hrep(self) -> HRep:
        with self._lock:
            if self._canonical_hrep is None:
                self._canonical_hrep = self._build_canonical_hrep()
            return self._canonical_hrep

    def canonical_vrep(self) -> VRep:
        with self._lock:
            if self._canonical_vrep is None:
                self._canonical_vrep = self._build_canonical_vrep()
            return self._canonical_vrep

    def _build_canonical_hrep(self) -> HRep:
        h = self.hrep()
        if self.is_empty():
            e = unit_vec(self.dim, 0)
            return HRep(self.dim, ((e, Fraction(-1)), (vneg(e), Fraction(-1))), ())
        eq_rows = [list(a) + [b] for a, b in h.eqs]
        ineq_rows = list(h.ineqs)
        # promote rows that every point meets with equality
        kept = []
        for a, b in ineq_rows:
            out = solve_lp(make_program(a, ineqs=h.ineqs, eqs=h.eqs))
            if isinstance(out, LpOptimal) and out.value == b:
                eq_rows.append(list(a) + [b])
            else:
                kept.append((a, b))
        reduced_eqs, pivots = rref(eq_rows)
        eqs = []
        for row in reduced_eqs:
            a, b = tuple(row[:-1]), row[-1]
            if is_zero_vec(a):
                raise PreconditionError("inconsistent equality system on a nonempty set")
            eqs.append((a, b))
        seen = []
        for a, b in kept:
            r = reduce_mod_subspace(tuple(a) + (b,), reduced_eqs, pivots)
            a, b = r[:-1], r[-1]
            if is_zero_vec(a):
                continue
            lead = next(x for x in a if x != 0)
            a = tuple(x / abs(lead) for x in a)
            b = b / abs(lead)
            if (a, b) not in seen:
                seen.append((a, b))
        pruned = list(seen)
        for row in list(pruned):
            rest = [r for r in pruned if r is not row]
            a, b = row
            out = solve_lp(make_program(vneg(a), ineqs=rest, eqs=eqs))
            if isinstance(out, LpOptimal) and -out.value <= b:
                pruned.remove(row)
        return HRep(self.dim, tuple(sorted(pruned)), tuple(sorted(eqs)))

    def _build_canonical_vrep(self) -> VRep:
        h = self.hrep()
        pts, rays, lin = dd.hrep_to_generators(h.ineqs, h.eqs, self.dim)
        dirs = []
        for r in tuple(rays) + tuple(lin) + tuple(vneg(l) for l in lin):
            c = _canonical_direction(r)
            if c not in dirs:
                dirs.append(c)
        return VRep(self.dim, tuple(sorted(pts)), tuple(sorted(dirs)))

    # -- helpers ------------------------------------------------------------

    def _point(self, x) -> Vec:
        x = vec(x)
        if len(x) != self.dim:
            raise InputError(f"point has {len(x)} coordinates, expected {self.dim}")
        return x

    def _same_dim(self, other: "ConvexSet") -> None:
        if self.dim != other.dim:
            raise InputError("sets live in different dimensions")


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def _canonical_direction(r: Vec) -> Vec:
    lead = next(x for x in r if x != 0)
    return tuple(x / abs(lead) for x in r)


def _generator_membership(vertices, rays, x: Vec) -> bool:
    if not vertices:
        return False
    k, m = len(vertices), len(rays)
    dim = len(x)
    eqs = []
    for j in range(dim):
        eqs.append(([p[j] for p in vertices] + [r[j] for r in rays], x[j]))
    eqs.append(([1] * k + [0] * m, 1))
    lp = make_program([0] * (k + m), eqs=eqs, signs=[NONNEG] * (k + m))
    return isinstance(solve_lp(lp), LpOptimal)


def ball_inf(center, radius) -> ConvexSet:
    """Box ball of the max norm."""
    center = vec(center)
    radius = frac(radius)
    if radius < 0:
        raise InputError("radius must be nonnegative")
    dim = len(center)
    ineqs = []
    for i in range(dim):
        e = unit_vec(dim, i)
        ineqs.append((e, center[i] + radius))
        ineqs.append((vneg(e), radius - center[i]))
    return ConvexSet.from_hrep(dim, ineqs)


def sets_equal(a: ConvexSet, b: ConvexSet) -> bool:
    if a.dim != b.dim:
        return False
    return a.canonical_hrep() == b.canonical_hrep()
