"""Certified exact rational linear programming.

Orientation: minimize c.x subject to A x <= b, E x = f, with an optional
sign restriction per variable. Every outcome carries a witness that
verify_certificate re-checks in exact arithmetic, independently of the
solver:

* LpOptimal(point, value, dual_ineq, dual_eq): the point is feasible,
  dual_ineq >= 0, the reduced vector g = c + A^T y - E^T z is zero on
  free variables (>= 0 on nonnegative ones, <= 0 on nonpositive ones),
  and f.z - b.y == value == c.point. Equality of the two objective
  values forces complementary slackness, so no separate check is needed.
* LpInfeasible(farkas_ineq, farkas_eq): with y = farkas_ineq >= 0 and
  z = farkas_eq, the combination h = A^T y + E^T z is zero on free
  variables (>= 0 / <= 0 on sign-restricted ones) while b.y + f.z < 0,
  which no feasible point can satisfy.
* LpUnbounded(ray, point): the point is feasible and the ray is a
  recession direction (A ray <= 0, E ray = 0, sign-compatible) with
  c.ray < 0.

The solver is a two-phase simplex with Bland's rule on an integer
tableau: all rows share one positive denominator and pivots use the
division-free update, so arithmetic stays in plain ints and results are
bit-for-bit deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .errors import InputError, InternalError
from .linalg import Vec, frac, lcm_all, vec

FREE = 0
NONNEG = 1
NONPOS = -1


@dataclass(frozen=True)
class LinearProgram:
    objective: Vec
    ineq_lhs: tuple[Vec, ...]
    ineq_rhs: Vec
    eq_lhs: tuple[Vec, ...]
    eq_rhs: Vec
    var_signs: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.objective)


def make_program(objective, ineqs=(), eqs=(), signs=None) -> LinearProgram:
    """Build a validated LinearProgram.

    ineqs and eqs are sequences of (coefficients, rhs) pairs; signs is an
    optional sequence over {FREE, NONNEG, NONPOS}, default all free. A
    zero objective turns solve_lp into a pure feasibility test.
    """
    obj = vec(objective)
    n = len(obj)
    ia, ib, ea, eb = [], [], [], []
    for a, b in ineqs:
        a = vec(a)
        if len(a) != n:
            raise InputError(f"inequality row has {len(a)} coefficients, expected {n}")
        ia.append(a)
        ib.append(frac(b))
    for a, b in eqs:
        a = vec(a)
        if len(a) != n:
            raise InputError(f"equality row has {len(a)} coefficients, expected {n}")
        ea.append(a)
        eb.append(frac(b))
    if signs is None:
        sg = (FREE,) * n
    else:
        sg = tuple(signs)
        if len(sg) != n or any(s not in (FREE, NONNEG, NONPOS) for s in sg):
            raise InputError("bad variable sign vector")
    return LinearProgram(obj, tuple(ia), tuple(ib), tuple(ea), tuple(eb), sg)


@dataclass(frozen=True)
class LpOptimal:
    point: Vec
    value: Fraction
    dual_ineq: Vec
    dual_eq: Vec

    status = "optimal"


@dataclass(frozen=True)
class LpInfeasible:
    farkas_ineq: Vec
    farkas_eq: Vec

    status = "infeasible"


@dataclass(frozen=True)
class LpUnbounded:
    ray: Vec
    point: Vec

    status = "unbounded"


LpOutcome = Union[LpOptimal, LpInfeasible, LpUnbounded]


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise InternalError("integer pivot lost exactness")
    return q


class _Tableau:
    """Integer simplex tableau with one shared positive denominator."""

    def __init__(self, lp: LinearProgram, trace=None):
        self.lp = lp
        self.trace = trace
        n = lp.dim
        # split columns: free variables get a +/- pair
        self.tcols: list[tuple[int, int]] = []
        for j, s in enumerate(lp.var_signs):
            if s >= 0:
                self.tcols.append((j, 1))
            if s <= 0:
                self.tcols.append((j, -1))
        self.m1 = len(lp.ineq_lhs)
        self.m2 = len(lp.eq_lhs)
        self.m = self.m1 + self.m2
        self.nt = len(self.tcols)
        self.ns = self.m1
        self.ncols = self.nt + self.ns + self.m
        self.rowscale: list[Fraction] = []  # std row = rowscale * original row
        self.rows: list[list[int]] = []
        for r in range(self.m):
            if r < self.m1:
                a, b = lp.ineq_lhs[r], lp.ineq_rhs[r]
            else:
                a, b = lp.eq_lhs[r - self.m1], lp.eq_rhs[r - self.m1]
            scale = lcm_all([x.denominator for x in a] + [b.denominator])
            ai = [int(x * scale) for x in a]
            bi = int(b * scale)
            t = Fraction(scale)
            if bi < 0:
                ai = [-x for x in ai]
                bi = -bi
                t = -t
            row = [0] * (self.ncols + 1)
            for k, (j, sg) in enumerate(self.tcols):
                row[k] = sg * ai[j]
            if r < self.m1:
                row[self.nt + r] = 1 if t > 0 else -1
            row[self.nt + self.ns + r] = 1
            row[-1] = bi
            self.rows.append(row)
            self.rowscale.append(t)
        self.obj_scale = lcm_all([x.denominator for x in lp.objective] or [1])
        cint = [int(x * self.obj_scale) for x in lp.objective]
        self.obj2 = [0] * (self.ncols + 1)
        for k, (j, sg) in enumerate(self.tcols):
            self.obj2[k] = sg * cint[j]
        self.obj1 = [0] * (self.ncols + 1)
        for row in self.rows:
            for j in range(self.ncols + 1):
                self.obj1[j] -= row[j]
        for r in range(self.m):
            self.obj1[self.nt + self.ns + r] += 1
        self.basis = [self.nt + self.ns + r for r in range(self.m)]
        self.active = [True] * self.m
        self.den = 1

    def art_col(self, r: int) -> int:
        return self.nt + self.ns + r

    def _pivot(self, pr: int, pc: int) -> None:
        piv = self.rows[pr][pc]
        den = self.den
        prow = self.rows[pr]
        width = self.ncols + 1
        for row in self.rows + [self.obj1, self.obj2]:
            if row is prow:
                continue
            f = row[pc]
            if f:
                for j in range(width):
                    row[j] = _exact_div(row[j] * piv - f * prow[j], den)
            elif piv != den:
                for j in range(width):
                    row[j] = _exact_div(row[j] * piv, den)
        self.den = piv
        self.basis[pr] = pc
        if self.den < 0:
            self.den = -self.den
            for row in self.rows + [self.obj1, self.obj2]:
                for j in range(width):
                    row[j] = -row[j]
        if self.trace is not None:
            self.trace(self.render())

    def _ratio_row(self, pc: int) -> int | None:
        best = None
        for i in range(self.m):
            if not self.active[i]:
                continue
            a = self.rows[i][pc]
            if a <= 0:
                continue
            b = self.rows[i][-1]
            if best is None:
                best = (b, a, self.basis[i], i)
                continue
            bb, ba, bvar, _ = best
            lhs = b * ba
            rhs = bb * a
            if lhs < rhs or (lhs == rhs and self.basis[i] < bvar):
                best = (b, a, self.basis[i], i)
        return best[3] if best is not None else None

    def _run(self, obj: list[int], n_enter: int) -> int | None:
        """Bland's rule until optimal (returns None) or unbounded
        (returns the entering column)."""
        while True:
            pc = next((j for j in range(n_enter) if obj[j] < 0), None)
            if pc is None:
                return None
            pr = self._ratio_row(pc)
            if pr is None:
                return pc
            self._pivot(pr, pc)

    def _drive_out_artificials(self) -> None:
        for i in range(self.m):
            if not self.active[i]:
                continue
            if self.basis[i] < self.nt + self.ns:
                continue
            row = self.rows[i]
            pc = next((j for j in range(self.nt + self.ns) if row[j] != 0), None)
            if pc is None:
                self.active[i] = False
            else:
                self._pivot(i, pc)

    def point(self) -> Vec:
        vals = {}
        for i in range(self.m):
            if self.active[i]:
                vals[self.basis[i]] = Fraction(self.rows[i][-1], self.den)
        x = [Fraction(0)] * self.lp.dim
        for k, (j, sg) in enumerate(self.tcols):
            v = vals.get(k)
            if v:
                x[j] += sg * v
        return tuple(x)

    def row_multipliers(self, obj: list[int], art_cost: int, unscale: Fraction) -> list[Fraction]:
        """Multipliers on the original rows proving the current reduced
        costs, read off the artificial columns of an objective row.

        The artificial block started as the identity, so it records the
        row operations applied so far; rows dropped as redundant still
        participate and their multipliers stay sign-safe because their
        slack columns kept nonnegative reduced costs.
        """
        out = []
        for r in range(self.m):
            y_std = art_cost - Fraction(obj[self.art_col(r)], self.den)
            out.append(y_std * self.rowscale[r] / unscale)
        return out

    def render(self) -> str:
        lines = [f"den={self.den} basis={self.basis}"]
        for i, row in enumerate(self.rows):
            tag = "" if self.active[i] else " (dropped)"
            lines.append(" ".join(str(v) for v in row) + tag)
        lines.append("z1 " + " ".join(str(v) for v in self.obj1))
        lines.append("z2 " + " ".join(str(v) for v in self.obj2))
        return "\n".join(lines)


def solve_lp(lp: LinearProgram, trace: Callable[[str], None] | None = None) -> LpOutcome:
    """Solve exactly; the returned certificate is verified before return.

    Deterministic: the same program yields the identical outcome object.
    """
    tab = _Tableau(lp, trace)
    unbounded_col = tab._run(tab.obj1, tab.nt + tab.ns)
    if unbounded_col is not None:
        raise InternalError("phase one cannot be unbounded")
    if tab.obj1[-1] != 0:
        # positive infeasibility gap; multipliers give a Farkas witness
        w = tab.row_multipliers(tab.obj1, 1, Fraction(1))
        outcome = LpInfeasible(
            farkas_ineq=tuple(-w[r] for r in range(tab.m1)),
            farkas_eq=tuple(-w[tab.m1 + k] for k in range(tab.m2)),
        )
        _check(lp, outcome)
        return outcome
    tab._drive_out_artificials()
    unbounded_col = tab._run(tab.obj2, tab.nt + tab.ns)
    if unbounded_col is not None:
        ray_t = {unbounded_col: Fraction(1)}
        for i in range(tab.m):
            if tab.active[i]:
                ray_t[tab.basis[i]] = Fraction(-tab.rows[i][unbounded_col], tab.den)
        ray = [Fraction(0)] * lp.dim
        for k, (j, sg) in enumerate(tab.tcols):
            v = ray_t.get(k)
            if v:
                ray[j] += sg * v
        outcome = LpUnbounded(ray=tuple(ray), point=tab.point())
        _check(lp, outcome)
        return outcome
    value = Fraction(-tab.obj2[-1], tab.den) / tab.obj_scale
    w = tab.row_multipliers(tab.obj2, 0, Fraction(tab.obj_scale))
    outcome = LpOptimal(
        point=tab.point(),
        value=value,
        dual_ineq=tuple(-w[r] for r in range(tab.m1)),
        dual_eq=tuple(w[tab.m1 + k] for k in range(tab.m2)),
    )
    _check(lp, outcome)
    return outcome


def _check(lp: LinearProgram, outcome: LpOutcome) -> None:
    if not verify_certificate(lp, outcome):
        raise InternalError(f"certificate failed self-check: {outcome!r}")


def _feasible(lp: LinearProgram, x: Vec) -> bool:
    if len(x) != lp.dim:
        return False
    for a, b in zip(lp.ineq_lhs, lp.ineq_rhs):
        if sum(ai * xi for ai, xi in zip(a, x)) > b:
            return False
    for a, b in zip(lp.eq_lhs, lp.eq_rhs):
        if sum(ai * xi for ai, xi in zip(a, x)) != b:
            return False
    for s, xi in zip(lp.var_signs, x):
        if s == NONNEG and xi < 0:
            return False
        if s == NONPOS and xi > 0:
            return False
    return True


def _combine(lp: LinearProgram, y: Vec, z: Vec) -> Vec:
    out = [Fraction(0)] * lp.dim
    for yi, a in zip(y, lp.ineq_lhs):
        if yi:
            for j in range(lp.dim):
                out[j] += yi * a[j]
    for zk, a in zip(z, lp.eq_lhs):
        if zk:
            for j in range(lp.dim):
                out[j] += zk * a[j]
    return tuple(out)


def _sign_ok(lp: LinearProgram, g: Vec) -> bool:
    for s, gj in zip(lp.var_signs, g):
        if s == FREE and gj != 0:
            return False
        if s == NONNEG and gj < 0:
            return False
        if s == NONPOS and gj > 0:
            return False
    return True


def verify_certificate(lp: LinearProgram, outcome: LpOutcome) -> bool:
    """Re-check the certificate algebra exactly. Malformed certificates
    return False rather than raising."""
    try:
        if isinstance(outcome, LpOptimal):
            x, y, z = outcome.point, outcome.dual_ineq, outcome.dual_eq
            if len(y) != len(lp.ineq_lhs) or len(z) != len(lp.eq_lhs):
                return False
            if not _feasible(lp, x):
                return False
            if any(yi < 0 for yi in y):
                return False
            g = list(_combine(lp, y, tuple(-zk for zk in z)))
            for j in range(lp.dim):
                g[j] += lp.objective[j]
            if not _sign_ok(lp, tuple(g)):
                return False
            primal = sum(c * xi for c, xi in zip(lp.objective, x))
            dual = (sum(zk * fk for zk, fk in zip(z, lp.eq_rhs))
                    - sum(yi * bi for yi, bi in zip(y, lp.ineq_rhs)))
            return primal == outcome.value and dual == outcome.value
        if isinstance(outcome, LpInfeasible):
            y, z = outcome.farkas_ineq, outcome.farkas_eq
            if len(y) != len(lp.ineq_lhs) or len(z) != len(lp.eq_lhs):
                return False
            if any(yi < 0 for yi in y):
                return False
            h = _combine(lp, y, z)
            if not _sign_ok(lp, h):
                return False
            bound = (sum(yi * bi for yi, bi in zip(y, lp.ineq_rhs))
                     + sum(zk * fk for zk, fk in zip(z, lp.eq_rhs)))
            return bound < 0
        if isinstance(outcome, LpUnbounded):
            r, x = outcome.ray, outcome.point
            if len(r) != lp.dim or not _feasible(lp, x):
                return False
            for a in lp.ineq_lhs:
                if sum(ai * ri for ai, ri in zip(a, r)) > 0:
                    return False
            for a in lp.eq_lhs:
                if sum(ai * ri for ai, ri in zip(a, r)) != 0:
                    return False
            for s, ri in zip(lp.var_signs, r):
                if s == NONNEG and ri < 0:
                    return False
                if s == NONPOS and ri > 0:
                    return False
            slope = sum(c * ri for c, ri in zip(lp.objective, r))
            return slope < 0
        return False
    except (TypeError, AttributeError, IndexError):
        return False
