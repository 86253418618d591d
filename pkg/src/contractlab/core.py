"""The principal-agent model: instances, utilities, best responses with
principal-favorable tie-breaking, epsilon-IC sets, and robustification."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, TypeAlias

import numpy as np

from .dist import DiscreteTypeInstance, TypeDistribution, cdf
from .errors import UsageError
from .numerics import Num, is_exact

Contract: TypeAlias = "tuple[Num, ...]"

TIE_TOL = 1e-9
_ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Instance:
    """Actions with outcome distributions F (row-stochastic), rewards r in
    [0,1] per outcome, and unit costs c >= 0 with at least one free action."""

    F: tuple[tuple[Num, ...], ...]
    r: tuple[Num, ...]
    c: tuple[Num, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        n, m = len(self.F), len(self.r)
        if n == 0 or m == 0:
            raise UsageError("instance needs at least one action and outcome")
        if len(self.c) != n:
            raise UsageError("cost vector length must match action count")
        if self.labels is not None and len(self.labels) != n:
            raise UsageError("labels length must match action count")
        for a, row in enumerate(self.F):
            if len(row) != m:
                raise UsageError(f"F row {a} has length {len(row)}, expected {m}")
            if any(x < 0 or x > 1 for x in row):
                raise UsageError(f"F row {a} has entries outside [0,1]")
            total = sum(row)
            if is_exact(*row):
                if total != 1:
                    raise UsageError(f"F row {a} sums to {total}, expected 1")
            elif abs(total - 1.0) > _ROW_SUM_TOL:
                raise UsageError(f"F row {a} sums to {total!r}, expected 1")
        if any(x < 0 or x > 1 for x in self.r):
            raise UsageError("rewards must lie in [0,1]")
        if any(x < 0 for x in self.c):
            raise UsageError("costs must be nonnegative")
        if all(x != 0 for x in self.c):
            raise UsageError("at least one action must have zero cost")

    @property
    def n_actions(self) -> int:
        return len(self.F)

    @property
    def n_outcomes(self) -> int:
        return len(self.r)

    @cached_property
    def exact(self) -> bool:
        return is_exact(*self.F, *self.r, *self.c)

    @cached_property
    def F_arr(self) -> np.ndarray:
        return np.asarray(self.F, dtype=float)

    @cached_property
    def r_arr(self) -> np.ndarray:
        return np.asarray(self.r, dtype=float)

    @cached_property
    def c_arr(self) -> np.ndarray:
        return np.asarray(self.c, dtype=float)


@dataclass(frozen=True)
class BestResponse:
    action: int
    agent_utility: Num
    principal_utility: Num
    ic_set: frozenset[int]


def _check_action(inst: Instance, a: int) -> None:
    if not 0 <= a < inst.n_actions:
        raise UsageError(f"action index {a} out of range [0,{inst.n_actions})")


def _check_contract(inst: Instance, p: Sequence[Num]) -> None:
    if len(p) != inst.n_outcomes:
        raise UsageError(
            f"contract has {len(p)} payments, expected {inst.n_outcomes}"
        )
    if any(x < 0 for x in p):
        raise UsageError("payments must be nonnegative")


def agent_utility(inst: Instance, p: Sequence[Num], a: int, theta: Num) -> Num:
    """sum_w F[a,w] p[w] - theta * c[a]."""
    _check_action(inst, a)
    _check_contract(inst, p)
    row = inst.F[a]
    return sum(f * x for f, x in zip(row, p)) - theta * inst.c[a]


def principal_utility(inst: Instance, p: Sequence[Num], a: int) -> Num:
    """sum_w F[a,w] (r[w] - p[w])."""
    _check_action(inst, a)
    _check_contract(inst, p)
    row = inst.F[a]
    return sum(f * (rw - x) for f, rw, x in zip(row, inst.r, p))


def _tie_tol(inst: Instance, p: Sequence[Num], theta: Num) -> Num:
    exact = inst.exact and is_exact(theta, *p)
    return 0 if exact else TIE_TOL


def eps_best_responses(
    inst: Instance, p: Sequence[Num], theta: Num, eps: Num
) -> list[int]:
    """Actions within eps of the agent's best utility (ties resolved exactly
    on rational data, within 1e-9 on float data)."""
    if eps < 0:
        raise UsageError("eps must be nonnegative")
    _check_contract(inst, p)
    utils = [agent_utility(inst, p, a, theta) for a in range(inst.n_actions)]
    cutoff = max(utils) - eps - _tie_tol(inst, p, theta)
    return [a for a, u in enumerate(utils) if u >= cutoff]


def best_response(inst: Instance, p: Sequence[Num], theta: Num) -> BestResponse:
    """Agent-optimal action; ties favor the principal, then the lowest index."""
    ic = eps_best_responses(inst, p, theta, 0)
    tol = _tie_tol(inst, p, theta)
    pus = {a: principal_utility(inst, p, a) for a in ic}
    best = max(pus.values())
    action = min(a for a in ic if pus[a] >= best - tol)
    return BestResponse(
        action=action,
        agent_utility=agent_utility(inst, p, action, theta),
        principal_utility=pus[action],
        ic_set=frozenset(ic),
    )


def robustify(
    inst: Instance, p: Sequence[Num], alpha: Num, bounded: bool = False
) -> Contract:
    """Mix the contract toward the reward vector: p + alpha (r - p).
    Negative components clamp to 0; in the bounded regime entries cap at 1."""
    if alpha < 0 or alpha > 1:
        raise UsageError(f"alpha must lie in [0,1], got {alpha}")
    _check_contract(inst, p)
    out = []
    for x, rw in zip(p, inst.r):
        v = x + alpha * (rw - x)
        if v < 0:
            v = 0
        if bounded and v > 1:
            v = 1
        out.append(v)
    return tuple(out)


def expected_principal_utility(
    inst: Instance, dti: DiscreteTypeInstance, p: Sequence[Num]
) -> Num:
    """sum_i gamma_i * principal utility at type theta_i's best response."""
    total = 0
    for theta, w in zip(dti.types, dti.weights):
        if w == 0:
            continue
        total += w * best_response(inst, p, theta).principal_utility
    return total


def best_response_breakpoints(inst: Instance, p: Sequence[Num]) -> list[float]:
    """Candidate types where the best response can change: crossings of the
    affine agent utilities, clipped to [0,1]."""
    fp = inst.F_arr @ np.asarray(p, dtype=float)
    pts = set()
    n = inst.n_actions
    for a in range(n):
        for b in range(a + 1, n):
            dc = float(inst.c_arr[a] - inst.c_arr[b])
            if dc != 0.0:
                t = float(fp[a] - fp[b]) / dc
                if 0.0 < t < 1.0:
                    pts.add(t)
    return sorted(pts)


def expected_principal_utility_continuous(
    inst: Instance,
    gamma: TypeDistribution,
    p: Sequence[Num],
    resolution: float = 1e-5,
) -> float:
    """E_{theta ~ Gamma}[U^P(p, theta)] by composite midpoint quadrature at
    the given resolution, with cells split at density breakpoints and at best
    response crossings so the piecewise-constant integrand is hit exactly."""
    _check_contract(inst, p)
    if resolution <= 0:
        raise UsageError("resolution must be positive")
    if hasattr(gamma, "points"):  # atoms: the expectation is a finite sum
        return float(
            sum(
                float(w) * float(best_response(inst, p, float(t)).principal_utility)
                for t, w in zip(gamma.points, gamma.weights)
            )
        )
    edges = set(np.linspace(0.0, 1.0, int(math.ceil(1.0 / resolution)) + 1))
    edges.update(float(b) for b in gamma.breakpoints)
    edges.update(best_response_breakpoints(inst, p))
    grid = np.array(sorted(edges))
    grid = grid[(grid >= 0.0) & (grid <= 1.0)]
    mids = 0.5 * (grid[:-1] + grid[1:])

    pv = np.asarray(p, dtype=float)
    fp = inst.F_arr @ pv
    fq = inst.F_arr @ (inst.r_arr - pv)
    ua = fp[:, None] - inst.c_arr[:, None] * mids[None, :]
    top = ua.max(axis=0)
    eligible = ua >= top[None, :] - TIE_TOL
    vals = np.where(eligible, fq[:, None], -np.inf).max(axis=0)

    masses = np.diff(cdf(gamma, grid))
    return float(np.dot(masses, vals))
