"""Small exact linear algebra kit over rationals.

Vectors are tuples of Fraction. Everything here is pure and allocation
light; the heavier numeric work lives in the simplex tableau, which uses
integers directly.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import InputError

Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce an int, string like '3/4', or Fraction to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad rational literal {x!r}") from e
    raise InputError(f"not a rational: {x!r}")


def vec(xs) -> Vec:
    return tuple(frac(x) for x in xs)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit_vec(n: int, i: int, sign: int = 1) -> Vec:
    return tuple(Fraction(sign) if j == i else ZERO for j in range(n))


def dot(u: Vec, v: Vec) -> Fraction:
    if len(u) != len(v):
        raise InputError(f"dot of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), ZERO)


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(c: Fraction, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def is_zero_vec(u: Vec) -> bool:
    return all(a == 0 for a in u)


def l1_norm(u: Vec) -> Fraction:
    return sum((abs(a) for a in u), ZERO)


def linf_norm(u: Vec) -> Fraction:
    return max((abs(a) for a in u), default=ZERO)


def canonical_ray(u: Vec) -> Vec:
    """Scale a nonzero direction by a positive factor so the first
    nonzero entry has absolute value one."""
    for a in u:
        if a != 0:
            return tuple(x / abs(a) for x in u)
    raise InputError("zero vector has no direction")


def lcm_all(nums) -> int:
    out = 1
    for n in nums:
        out = out * n // gcd(out, n)
    return out


def integerize(u: Vec) -> tuple[int, ...]:
    """Clear denominators; the common positive factor is dropped."""
    scale = lcm_all(x.denominator for x in u) if u else 1
    ints = [int(x * scale) for x in u]
    g = 0
    for n in ints:
        g = gcd(g, n)
    if g > 1:
        ints = [n // g for n in ints]
    return tuple(ints)


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns the nonzero rows and their pivot
    column indices; input rows are not modified."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat[:r], pivots


def rank(rows: list[Vec]) -> int:
    if not rows:
        return 0
    reduced, _ = rref([list(r) for r in rows])
    return len(reduced)


def kernel_basis(rows: list[Vec], dim: int) -> list[Vec]:
    """Canonical basis of {x : r.x = 0 for every row r}."""
    if not rows:
        return [unit_vec(dim, i) for i in range(dim)]
    reduced, pivots = rref([list(r) for r in rows])
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * dim
        v[fc] = ONE
        for ri, pc in enumerate(pivots):
            v[pc] = -reduced[ri][fc]
        basis.append(tuple(v))
    return basis


def reduce_mod_subspace(v: Vec, rref_rows: list[list[Fraction]],
                        pivots: list[int]) -> Vec:
    """Subtract the unique combination of RREF basis rows that zeroes the
    pivot coordinates of v."""
    out = list(v)
    for ri, pc in enumerate(pivots):
        f = out[pc]
        if f != 0:
            row = rref_rows[ri]
            out = [x - f * y for x, y in zip(out, row)]
    return tuple(out)
