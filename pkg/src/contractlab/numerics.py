"""Exact-rational simplex LP solving, small dense float linear algebra, and
the seeded splittable RNG contract used by every stochastic component."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence, TypeAlias

import numpy as np

from .errors import UsageError

Num: TypeAlias = "int | float | Fraction"
Relation: TypeAlias = Literal["<=", ">=", "=="]
LPStatus: TypeAlias = Literal["optimal", "infeasible", "unbounded"]

SINGULAR_PIVOT_TOL = 1e-12


def as_fraction(x: Num) -> Fraction:
    """Exact conversion; floats map to their exact binary value."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(x)


def is_exact(*values: object) -> bool:
    """True when every scalar (recursing into sequences) is an int or Fraction."""
    for v in values:
        if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
            continue
        if isinstance(v, (list, tuple)):
            if not is_exact(*v):
                return False
            continue
        return False
    return True


# ---------------------------------------------------------------------------
# Exact rational LP (tiny dense problems; Bland's rule for determinism)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalLP:
    """maximize objective . x  subject to rows, x >= lower (default 0).

    constraints: (coefficients, relation, rhs) rows. upper_bounds entries may
    be None for free-above variables. constant is added to the optimal value.
    """

    objective: tuple[Fraction, ...]
    constraints: tuple[tuple[tuple[Fraction, ...], Relation, Fraction], ...]
    lower_bounds: tuple[Fraction, ...] | None = None
    upper_bounds: tuple[Fraction | None, ...] | None = None
    constant: Fraction = Fraction(0)

    @staticmethod
    def build(
        objective: Sequence[Num],
        constraints: Sequence[tuple[Sequence[Num], Relation, Num]],
        lower_bounds: Sequence[Num] | None = None,
        upper_bounds: Sequence[Num | None] | None = None,
        constant: Num = 0,
    ) -> "RationalLP":
        obj = tuple(as_fraction(x) for x in objective)
        rows = []
        for coeffs, rel, rhs in constraints:
            if len(coeffs) != len(obj):
                raise UsageError(
                    f"constraint has {len(coeffs)} coefficients, expected {len(obj)}"
                )
            if rel not in ("<=", ">=", "=="):
                raise UsageError(f"unknown relation {rel!r}")
            rows.append(
                (tuple(as_fraction(x) for x in coeffs), rel, as_fraction(rhs))
            )
        lb = None
        if lower_bounds is not None:
            if len(lower_bounds) != len(obj):
                raise UsageError("lower_bounds length mismatch")
            lb = tuple(as_fraction(x) for x in lower_bounds)
        ub = None
        if upper_bounds is not None:
            if len(upper_bounds) != len(obj):
                raise UsageError("upper_bounds length mismatch")
            ub = tuple(None if x is None else as_fraction(x) for x in upper_bounds)
        return RationalLP(obj, tuple(rows), lb, ub, as_fraction(constant))


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    point: tuple[Fraction, ...] | None
    value: Fraction | None


_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(rows: list[list[Fraction]], basis: list[int], r: int, col: int) -> None:
    piv = rows[r][col]
    rows[r] = [v / piv for v in rows[r]]
    prow = rows[r]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[col]
        if f != 0:
            rows[i] = [a - f * b for a, b in zip(row, prow)]
    basis[r] = col


def _simplex_phase(
    rows: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
) -> LPStatus:
    """Maximize cost . x over the tableau in place. Bland's rule throughout:
    entering = lowest improving column, leaving = lowest basic index on ratio
    ties, which guarantees termination on degenerate tableaus."""
    ncols = len(rows[0]) - 1
    while True:
        # reduced costs d_j = c_j - c_B . column_j
        cb = [cost[b] for b in basis]
        entering = -1
        for j in range(ncols):
            if j in basis:
                continue
            dj = cost[j] - sum(cbi * rows[i][j] for i, cbi in enumerate(cb) if rows[i][j] != 0)
            if dj > 0:
                entering = j
                break
        if entering < 0:
            return "optimal"
        leaving = -1
        best_ratio: Fraction | None = None
        for i, row in enumerate(rows):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[i] < basis[leaving]
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            return "unbounded"
        _pivot(rows, basis, leaving, entering)


def lp_solve(lp: RationalLP) -> LPResult:
    """Exact two-phase simplex. Returns a basic feasible optimum (a vertex of
    the feasible region) with every constraint satisfied exactly."""
    n = len(lp.objective)
    for coeffs, _, _ in lp.constraints:
        if len(coeffs) != n:
            raise UsageError("constraint dimension mismatch")
    lb = lp.lower_bounds or tuple(_ZERO for _ in range(n))
    if len(lb) != n:
        raise UsageError("lower_bounds length mismatch")

    # shift x = y + lb so that y >= 0; fold upper bounds in as y <= ub - lb
    rows_in: list[tuple[list[Fraction], Relation, Fraction]] = []
    for coeffs, rel, rhs in lp.constraints:
        shift = sum(c * l for c, l in zip(coeffs, lb))
        rows_in.append((list(coeffs), rel, rhs - shift))
    if lp.upper_bounds is not None:
        for j, ub in enumerate(lp.upper_bounds):
            if ub is None:
                continue
            if ub < lb[j]:
                return LPResult("infeasible", None, None)
            unit = [_ZERO] * n
            unit[j] = _ONE
            rows_in.append((unit, "<=", ub - lb[j]))

    if not rows_in:
        if any(c > 0 for c in lp.objective):
            return LPResult("unbounded", None, None)
        value = sum(
            (c * l for c, l in zip(lp.objective, lb)), start=_ZERO
        ) + lp.constant
        return LPResult("optimal", tuple(lb), value)

    m = len(rows_in)
    n_slack = sum(1 for _, rel, _ in rows_in if rel != "==")
    slack_cols = n + n_slack
    art_needed = []
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    si = 0
    for coeffs, rel, rhs in rows_in:
        row = list(coeffs) + [_ZERO] * n_slack
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "==": "=="}[rel]
        if rel == "<=":
            row[n + si] = _ONE
            basis.append(n + si)
            art_needed.append(False)
            si += 1
        elif rel == ">=":
            row[n + si] = -_ONE
            basis.append(-1)  # placeholder, artificial assigned below
            art_needed.append(True)
            si += 1
        else:
            basis.append(-1)
            art_needed.append(True)
        row.append(rhs)
        rows.append(row)

    n_art = sum(art_needed)
    total = slack_cols + n_art
    ai = 0
    for i in range(m):
        rows[i] = rows[i][:-1] + [_ZERO] * n_art + [rows[i][-1]]
        if art_needed[i]:
            rows[i][slack_cols + ai] = _ONE
            basis[i] = slack_cols + ai
            ai += 1

    if n_art:
        cost1 = [_ZERO] * total
        for j in range(slack_cols, total):
            cost1[j] = -_ONE
        status = _simplex_phase(rows, basis, cost1)
        assert status == "optimal"  # phase 1 is always bounded
        infeas = sum(rows[i][-1] for i in range(m) if basis[i] >= slack_cols)
        if infeas != 0:
            return LPResult("infeasible", None, None)
        # drive leftover zero-valued artificials out of the basis
        for i in range(m):
            if basis[i] >= slack_cols:
                col = next(
                    (j for j in range(slack_cols) if rows[i][j] != 0), None
                )
                if col is not None:
                    _pivot(rows, basis, i, col)
        keep = [i for i in range(m) if basis[i] < slack_cols]
        rows = [rows[i][:slack_cols] + [rows[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]
        total = slack_cols

    cost2 = [_ZERO] * total
    for j in range(n):
        cost2[j] = lp.objective[j]
    if rows:
        status = _simplex_phase(rows, basis, cost2)
    else:
        status = "unbounded" if any(c > 0 for c in lp.objective) else "optimal"
    if status == "unbounded":
        return LPResult("unbounded", None, None)

    y = [_ZERO] * total
    for i, b in enumerate(basis):
        y[b] = rows[i][-1]
    point = tuple(y[j] + lb[j] for j in range(n))
    value = sum(
        (c * v for c, v in zip(lp.objective, point)), start=_ZERO
    ) + lp.constant
    return LPResult("optimal", point, value)


def rational_solve(
    matrix: Sequence[Sequence[Num]], rhs: Sequence[Num]
) -> tuple[Fraction, ...] | None:
    """Solve a square system exactly; None when the matrix is singular."""
    n = len(rhs)
    aug = [
        [as_fraction(v) for v in row] + [as_fraction(b)]
        for row, b in zip(matrix, rhs)
    ]
    if any(len(row) != n + 1 for row in aug) or len(aug) != n:
        raise UsageError("rational_solve needs a square system")
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        prow = aug[col]
        inv = _ONE / prow[col]
        aug[col] = [v * inv for v in prow]
        prow = aug[col]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], prow)]
    return tuple(aug[i][-1] for i in range(n))


# ---------------------------------------------------------------------------
# Small dense float linear algebra (LU with partial pivoting)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FloatSolve:
    x: np.ndarray | None
    singular: bool


def _lu_factor(a: np.ndarray) -> tuple[np.ndarray, np.ndarray] | None:
    n = a.shape[0]
    lu = a.astype(float).copy()
    perm = np.arange(n)
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) < SINGULAR_PIVOT_TOL:
            return None
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        lu[k + 1 :, k] /= lu[k, k]
        lu[k + 1 :, k + 1 :] -= np.outer(lu[k + 1 :, k], lu[k, k + 1 :])
    return lu, perm


def _lu_backsolve(lu: np.ndarray, perm: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = lu.shape[0]
    x = b[perm].astype(float).copy()
    for k in range(1, n):
        x[k] -= lu[k, :k] @ x[:k]
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - lu[k, k + 1 :] @ x[k + 1 :]) / lu[k, k]
    return x


def solve_linear_system(matrix: np.ndarray, rhs: np.ndarray) -> FloatSolve:
    """LU with partial pivoting; a pivot below 1e-12 is reported as singular,
    never silently inverted."""
    a = np.asarray(matrix, dtype=float)
    b = np.asarray(rhs, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise UsageError("solve_linear_system needs a square matrix")
    fac = _lu_factor(a)
    if fac is None:
        return FloatSolve(None, True)
    lu, perm = fac
    if b.ndim == 1:
        return FloatSolve(_lu_backsolve(lu, perm, b), False)
    cols = [_lu_backsolve(lu, perm, b[:, j]) for j in range(b.shape[1])]
    return FloatSolve(np.stack(cols, axis=1), False)


def invert(matrix: np.ndarray) -> FloatSolve:
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise UsageError("invert needs a square matrix")
    return solve_linear_system(a, np.eye(a.shape[0]))


# ---------------------------------------------------------------------------
# Seeded splittable RNG (counter-based Philox core)
# ---------------------------------------------------------------------------


@dataclass
class Rng:
    """Single-owner random stream. Identical (seed, stream) pairs reproduce
    identical draw sequences; substreams from rng_split never collide."""

    seed: int
    stream: tuple[int, ...] = ()
    gen: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=self.stream)
        self.gen = np.random.Generator(np.random.Philox(ss))


def rng_new(seed: int) -> Rng:
    return Rng(int(seed))


def rng_split(rng: Rng, stream_id: int) -> Rng:
    return Rng(rng.seed, rng.stream + (int(stream_id),))


def llog2(d: int) -> float:
    """max(0, log2 log2 d), clamped to 0 for d <= 2 where the double log
    is zero or undefined."""
    if d <= 2:
        return 0.0
    return max(0.0, math.log2(math.log2(d)))
