"""Conversion between the two descriptions of a polyhedron.

The engine is the double description method on homogeneous cones
{x : a.x <= 0}. Generators are kept as primitive integer tuples, the
lineality space is carried explicitly, and new rays come only from pairs
that pass the algebraic adjacency test (rank of the shared active rows
equals ambient dimension minus lineality dimension minus two), which
keeps the generator list irredundant at every step.

Polyhedra are handled through homogenization: a point x becomes the ray
(x, 1), a recession direction r becomes (r, 0), and the extra constraint
keeps the last coordinate nonnegative. The reverse conversion runs the
same engine on the polar side, where generators act as inequality rows.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import CapacityError, InputError
from .linalg import Vec, dot, integerize, rank, unit_vec, vec

MAX_DIM = 8
MAX_ROWS = 1024
MAX_LIVE_RAYS = 32768


def _guard(dim: int, nrows: int) -> None:
    # user-facing input caps live at the construction layer; these are
    # backstops for derived data
    if dim > MAX_DIM + 1:
        raise CapacityError(f"dimension {dim} exceeds the supported limit")
    if nrows > MAX_ROWS:
        raise CapacityError(f"{nrows} rows exceed the supported limit")


def cone_from_inequalities(rows: list[Vec], dim: int):
    """Generators of {x : a.x <= 0 for every row a}.

    Returns (rays, lineality) as tuples of primitive integer direction
    tuples. Rays are extreme modulo the lineality space.
    """
    _guard(dim, len(rows))
    lineality: list[Vec] = [unit_vec(dim, i) for i in range(dim)]
    rays: list[Vec] = []
    # activity sets index into `rows`; lineality vanishes on all
    # processed rows, so only rays need bookkeeping
    active: dict[int, set[int]] = {}
    processed: list[int] = []
    for ri, a in enumerate(rows):
        if len(a) != dim:
            raise InputError(f"row has {len(a)} coefficients, expected {dim}")
        if all(x == 0 for x in a):
            continue
        pivot = next((l for l in lineality if dot(a, l) != 0), None)
        if pivot is not None:
            # absorb: slide everything along the lineality direction onto
            # the hyperplane, then keep the feasible half as a new ray
            s0 = dot(a, pivot)
            l0 = tuple(-x / s0 for x in pivot)
            lineality = [
                tuple(x + dot(a, l) * y for x, y in zip(l, l0))
                for l in lineality if l is not pivot
            ]
            new_rays = []
            new_active = {}
            for k, r in enumerate(rays):
                moved = tuple(x + dot(a, r) * y for x, y in zip(r, l0))
                new_rays.append(moved)
                new_active[k] = active[k] | {ri}
            # the kept half-direction itself is strictly inside the new
            # halfspace, so it is not active at this row
            l0_key = len(new_rays)
            new_rays.append(l0)
            new_active[l0_key] = set(processed)
            rays = [vec(integerize(r)) for r in new_rays]
            active = new_active
        else:
            dim_eff = dim - len(lineality)
            signs = [dot(a, r) for r in rays]
            keep = [k for k, s in enumerate(signs) if s <= 0]
            pos = [k for k, s in enumerate(signs) if s < 0]
            neg = [k for k, s in enumerate(signs) if s > 0]
            new_rays = [rays[k] for k in keep]
            new_active = {
                i: (active[k] | {ri} if signs[k] == 0 else active[k])
                for i, k in enumerate(keep)
            }
            for p in pos:
                for n in neg:
                    common = active[p] & active[n]
                    if rank([rows[j] for j in common]) != dim_eff - 2:
                        continue
                    w = tuple(
                        signs[n] * xp - signs[p] * xn
                        for xp, xn in zip(rays[p], rays[n])
                    )
                    i = len(new_rays)
                    new_rays.append(vec(integerize(w)))
                    new_active[i] = common | {ri}
                    if len(new_rays) > MAX_LIVE_RAYS:
                        raise CapacityError("intermediate ray count blew up")
            rays = new_rays
            active = new_active
        processed.append(ri)
    rays = [vec(integerize(r)) for r in rays]
    lineality = [vec(integerize(l)) for l in lineality]
    return tuple(rays), tuple(lineality)


def hrep_to_generators(ineqs, eqs, dim: int):
    """Vertices and recession generators of {x : A x <= b, E x = f}.

    Returns (points, rays, lineality); empty set gives ((), (), ()).
    """
    _guard(dim, 2 * len(eqs) + len(ineqs) + 1)
    rows: list[Vec] = []
    for a, b in ineqs:
        rows.append(vec(tuple(a) + (-Fraction(b),)))
    for a, b in eqs:
        h = vec(tuple(a) + (-Fraction(b),))
        rows.append(h)
        rows.append(tuple(-x for x in h))
    rows.append(unit_vec(dim + 1, dim, -1))
    rays, lineality = cone_from_inequalities(rows, dim + 1)
    points, recession = [], []
    for g in rays:
        t = g[dim]
        if t > 0:
            points.append(tuple(x / t for x in g[:dim]))
        else:
            recession.append(g[:dim])
    lin = [l[:dim] for l in lineality]
    if not points:
        return (), (), ()
    return tuple(points), tuple(recession), tuple(lin)


def generators_to_hrep(points, rays, lineality, dim: int):
    """Inequality and equality rows describing the convex hull of the
    points plus the cone of the rays and lineality directions.

    An empty point list means the empty set, encoded by a pair of
    contradictory rows.
    """
    if not points:
        if rays or lineality:
            raise InputError("recession directions without any point")
        e = unit_vec(dim, 0)
        return ((e, Fraction(-1)), (vec(tuple(-x for x in e)), Fraction(-1))), ()
    _guard(dim, len(points) + len(rays) + len(lineality) + 1)
    rows: list[Vec] = []
    for p in points:
        rows.append(vec(tuple(p) + (Fraction(1),)))
    for r in rays:
        rows.append(vec(tuple(r) + (Fraction(0),)))
    for l in lineality:
        h = vec(tuple(l) + (Fraction(0),))
        rows.append(h)
        rows.append(tuple(-x for x in h))
    polar_rays, polar_lin = cone_from_inequalities(rows, dim + 1)
    ineqs = [(y[:dim], -y[dim]) for y in polar_rays]
    eqs = [(y[:dim], -y[dim]) for y in polar_lin]
    # a zero-normal valid inequality (0.x <= beta, beta >= 0) says nothing
    ineqs = [(a, b) for a, b in ineqs if any(x != 0 for x in a)]
    eqs = [(a, b) for a, b in eqs if any(x != 0 for x in a)]
    return tuple(ineqs), tuple(eqs)
