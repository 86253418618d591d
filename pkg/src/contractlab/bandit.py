"""Online contract design as a misspecified linear bandit.

Maps candidate contracts to utility-space arm vectors over a type grid,
computes near-G-optimal designs by Frank-Wolfe, and runs block-structured
phased elimination in two modes: cumulative-regret over a fixed horizon and
fixed-confidence best-arm identification with a block count set from the
target suboptimality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import core, dist, solver
from .core import TIE_TOL, Contract, Instance
from .dist import TypeDistribution
from .errors import ResourceGuardError, UsageError
from .numerics import Num, Rng, llog2, rng_new

__all__ = [
    "PAC_MAX_DIMENSION",
    "ArmSet",
    "DesignWeights",
    "g_optimal_design",
    "Environment",
    "LinearGaussianEnvironment",
    "ContractEnvironment",
    "contract_environment",
    "utility_map",
    "block_constant",
    "block_length",
    "BlockRecord",
    "EliminationState",
    "phased_elimination",
    "RegretRun",
    "algorithm1_regret",
    "PacResult",
    "pac_blocks",
    "pac_best_arm",
    "PacContractResult",
    "pac_best_contract",
]

PAC_MAX_DIMENSION = 512
_ARM_TOL = 1e-9
_RANK_TOL = 1e-12
_DESIGN_REFRESH = 256
_DESIGN_MAX_ITERS = 20_000
_MEAN_RESOLUTION = 1e-5


def utility_map(inst: Instance, p: Sequence[Num], eps: float) -> np.ndarray:
    """Principal utilities of one contract across the half-offset type grid."""
    if not 0 < eps <= 1:
        raise UsageError(f"grid width must lie in (0,1], got {eps}")
    thetas = np.asarray(dist.grid_points(float(eps)), dtype=float)
    return _utilities_at(inst, p, thetas)


def _utilities_at(inst: Instance, p: Sequence[Num], thetas: np.ndarray) -> np.ndarray:
    p_arr = np.asarray([float(x) for x in p], dtype=float)
    if p_arr.shape != (inst.n_outcomes,):
        raise UsageError(
            f"contract length {p_arr.size} does not match outcome count {inst.n_outcomes}"
        )
    fp = inst.F_arr @ p_arr
    pu = inst.F_arr @ (inst.r_arr - p_arr)
    agent = fp[None, :] - np.outer(thetas, inst.c_arr)
    eligible = agent >= agent.max(axis=1, keepdims=True) - TIE_TOL
    scores = np.where(eligible, pu[None, :], -np.inf)
    return scores.max(axis=1)


def _best_actions_at(
    fp: np.ndarray, pu: np.ndarray, c_arr: np.ndarray, thetas: np.ndarray
) -> np.ndarray:
    agent = fp[None, :] - np.outer(thetas, c_arr)
    eligible = agent >= agent.max(axis=1, keepdims=True) - TIE_TOL
    scores = np.where(eligible, pu[None, :], -np.inf)
    return np.argmax(scores, axis=1)


@dataclass(frozen=True)
class ArmSet:
    """Finite arm vectors in utility space, optionally tagged with the
    contract realizing each arm."""

    arms: tuple[tuple[float, ...], ...]
    contracts: tuple[Contract, ...] | None = None

    def __post_init__(self) -> None:
        if not self.arms:
            raise UsageError("need at least one arm")
        d = len(self.arms[0])
        if d == 0:
            raise UsageError("arms must have at least one coordinate")
        for i, x in enumerate(self.arms):
            if len(x) != d:
                raise UsageError(f"arm {i} has dimension {len(x)}, expected {d}")
            if any(not -1 - _ARM_TOL <= v <= 1 + _ARM_TOL for v in x):
                raise UsageError(f"arm {i} has coordinates outside [-1,1]")
        if self.contracts is not None and len(self.contracts) != len(self.arms):
            raise UsageError("contract tags must match arm count")

    @property
    def k(self) -> int:
        return len(self.arms)

    @property
    def dim(self) -> int:
        return len(self.arms[0])

    @cached_property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.arms, dtype=float)


@dataclass(frozen=True)
class DesignWeights:
    """Simplex weights over arms approximating the G-optimal design."""

    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.weights:
            raise UsageError("design needs at least one weight")
        if any(w < -_ARM_TOL for w in self.weights):
            raise UsageError("design weights must be nonnegative")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise UsageError("design weights must sum to 1")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w > 0)

    @property
    def support_size(self) -> int:
        return len(self.support)


def support_cap(d: int) -> int:
    """Target support size for a pruned design."""
    return math.ceil(4 * d * llog2(d) + 16)


def _greedy_basis(Z: np.ndarray, rank: int) -> list[int]:
    """Indices of `rank` arms picked greedily by residual norm."""
    residual = Z.copy()
    chosen: list[int] = []
    for _ in range(rank):
        norms = np.einsum("ij,ij->i", residual, residual)
        i = int(np.argmax(norms))
        if norms[i] <= _RANK_TOL:
            break
        chosen.append(i)
        v = residual[i] / math.sqrt(norms[i])
        residual -= np.outer(residual @ v, v)
    return chosen


def _max_leverage(Z: np.ndarray, w: np.ndarray) -> float:
    G = Z.T @ (Z * w[:, None])
    try:
        M = np.linalg.inv(G)
    except np.linalg.LinAlgError:
        return math.inf
    return float(np.einsum("ij,jl,il->i", Z, M, Z).max())


def g_optimal_design(X: ArmSet, tol: float = 0.05) -> DesignWeights:
    """Frank-Wolfe G-optimal design followed by greedy support pruning.

    Iterates until the maximum leverage is within (1 + tol) of the span
    dimension, then drops low-weight support arms whenever the bound
    survives, aiming at the ``support_cap`` target.  Rank-deficient arm
    sets are projected onto their span first.
    """
    if tol <= 0:
        raise UsageError(f"design tolerance must be positive, got {tol}")
    A = X.matrix
    U, s, Vt = np.linalg.svd(A, full_matrices=False)
    rank = int((s > max(s[0], 1.0) * _RANK_TOL).sum()) if s.size else 0
    if rank == 0:
        raise UsageError("all arms are zero vectors; no design exists")
    Z = A @ Vt[:rank].T
    k = X.k

    w = np.zeros(k)
    basis = _greedy_basis(Z, rank)
    w[basis] = 1.0 / len(basis)
    G = Z.T @ (Z * w[:, None])
    M = np.linalg.inv(G)
    target = (1.0 + tol) * rank
    for it in range(_DESIGN_MAX_ITERS):
        lev = np.einsum("ij,jl,il->i", Z, M, Z)
        i = int(np.argmax(lev))
        lmax = float(lev[i])
        if lmax <= target:
            break
        gamma = (lmax / rank - 1.0) / (lmax - 1.0)
        w *= 1.0 - gamma
        w[i] += gamma
        if (it + 1) % _DESIGN_REFRESH == 0:
            M = np.linalg.inv(Z.T @ (Z * w[:, None]))
        else:
            x = Z[i]
            Mx = M @ x
            a = 1.0 - gamma
            M = M / a - (gamma / (a * a)) * np.outer(Mx, Mx) / (
                1.0 + (gamma / a) * float(x @ Mx)
            )
    w = np.clip(w, 0.0, None)
    w /= w.sum()

    cap = max(support_cap(X.dim), rank)
    support = [int(i) for i in np.argsort(w) if w[i] > 0]
    for i in support:
        if int((w > 0).sum()) <= max(rank, 1):
            break
        trial = w.copy()
        trial[i] = 0.0
        total = trial.sum()
        if total <= 0:
            continue
        trial /= total
        if _max_leverage(Z, trial) <= target:
            w = trial
    if int((w > 0).sum()) > cap:
        # keep the cap's heaviest arms only if the bound still holds
        order = np.argsort(w)[::-1]
        trial = np.zeros_like(w)
        trial[order[:cap]] = w[order[:cap]]
        trial /= trial.sum()
        if _max_leverage(Z, trial) <= target:
            w = trial
    return DesignWeights(weights=tuple(float(v) for v in w))


class Environment:
    """Stochastic reward oracle over a finite arm set."""

    def pull(self, arm: int, rng: Rng) -> float:
        raise NotImplementedError

    def pull_sum(self, arm: int, count: int, rng: Rng) -> float:
        """Sum of `count` independent rewards from one arm."""
        return float(sum(self.pull(arm, rng) for _ in range(count)))

    def true_mean(self, arm: int) -> float:
        raise NotImplementedError

    @property
    def n_arms(self) -> int:
        raise NotImplementedError


class LinearGaussianEnvironment(Environment):
    """Gaussian rewards around linear means, with optional per-arm offsets
    modelling misspecification."""

    def __init__(
        self,
        arms: ArmSet,
        phi: Sequence[float],
        sigma: float = 0.1,
        offsets: Sequence[float] | None = None,
    ) -> None:
        if len(phi) != arms.dim:
            raise UsageError(
                f"parameter length {len(phi)} does not match arm dimension {arms.dim}"
            )
        if sigma < 0:
            raise UsageError(f"noise scale must be nonnegative, got {sigma}")
        self.arms = arms
        self.phi = np.asarray(phi, dtype=float)
        self.sigma = float(sigma)
        self._means = self.arms.matrix @ self.phi
        if offsets is not None:
            if len(offsets) != arms.k:
                raise UsageError("offsets must match arm count")
            self._means = self._means + np.asarray(offsets, dtype=float)

    def pull(self, arm: int, rng: Rng) -> float:
        return float(self._means[arm] + self.sigma * rng.gen.standard_normal())

    def pull_sum(self, arm: int, count: int, rng: Rng) -> float:
        if count == 0:
            return 0.0
        loc = count * self._means[arm]
        scale = self.sigma * math.sqrt(count)
        return float(loc + scale * rng.gen.standard_normal())

    def true_mean(self, arm: int) -> float:
        return float(self._means[arm])

    @property
    def n_arms(self) -> int:
        return self.arms.k


class ContractEnvironment(Environment):
    """Reward oracle that draws a type, lets the agent best-respond to the
    arm's contract, and samples an outcome reward."""

    def __init__(
        self,
        inst: Instance,
        gamma: TypeDistribution,
        eps: float,
        arms: ArmSet,
    ) -> None:
        if isinstance(gamma, dist.Discrete):
            raise UsageError(
                "type distribution must have a bounded density; atoms are not supported"
            )
        if arms.contracts is None:
            raise UsageError("contract environment needs contract-tagged arms")
        self.inst = inst
        self.gamma = gamma
        self.eps = float(eps)
        self.arms = arms
        self._cum_f = np.cumsum(inst.F_arr, axis=1)
        self._per_arm: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
        self._means: dict[int, float] = {}

    def _arm_tables(self, arm: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        tables = self._per_arm.get(arm)
        if tables is None:
            p_arr = np.asarray(
                [float(x) for x in self.arms.contracts[arm]], dtype=float
            )
            fp = self.inst.F_arr @ p_arr
            rp = self.inst.r_arr - p_arr
            pu = self.inst.F_arr @ rp
            tables = (fp, pu, rp)
            self._per_arm[arm] = tables
        return tables

    def pull(self, arm: int, rng: Rng) -> float:
        return self.pull_sum(arm, 1, rng)

    def pull_sum(self, arm: int, count: int, rng: Rng) -> float:
        if count == 0:
            return 0.0
        fp, pu, rp = self._arm_tables(arm)
        thetas = dist.sample_many(self.gamma, rng, count)
        actions = _best_actions_at(fp, pu, self.inst.c_arr, thetas)
        total = 0.0
        last = self.inst.n_outcomes - 1
        for a in np.unique(actions):
            n_a = int((actions == a).sum())
            u = rng.gen.random(n_a)
            omegas = np.minimum(
                np.searchsorted(self._cum_f[a], u, side="right"), last
            )
            total += float(rp[omegas].sum())
        return total

    def true_mean(self, arm: int) -> float:
        mean = self._means.get(arm)
        if mean is None:
            mean = float(
                core.expected_principal_utility_continuous(
                    self.inst,
                    self.gamma,
                    self.arms.contracts[arm],
                    resolution=_MEAN_RESOLUTION,
                )
            )
            self._means[arm] = mean
        return mean

    @property
    def n_arms(self) -> int:
        return self.arms.k


def _candidate_arms(inst: Instance, eps: float) -> ArmSet:
    """Arm vectors of the candidate contracts over the eps type grid."""
    grid = np.asarray(dist.grid_points(float(eps)), dtype=float)
    types = tuple(Fraction(float(t)) for t in grid)
    contracts = solver.candidate_contract_set(inst, types, bounded=True)
    rows = tuple(
        tuple(float(v) for v in _utilities_at(inst, p, grid)) for p in contracts
    )
    return ArmSet(arms=rows, contracts=tuple(contracts))


def contract_environment(
    inst: Instance, gamma: TypeDistribution, eps: float
) -> ContractEnvironment:
    """Build the candidate-contract arm set and its sampling environment."""
    if not 0 < eps <= 1:
        raise UsageError(f"grid width must lie in (0,1], got {eps}")
    arms = _candidate_arms(inst, eps)
    return ContractEnvironment(inst, gamma, eps, arms)


def block_constant(d: int) -> int:
    """Base block length: ceil(4 d llog2(d) + 16)."""
    if d < 1:
        raise UsageError(f"dimension must be positive, got {d}")
    return math.ceil(4 * d * llog2(d) + 16)


def block_length(d: int, ell: int) -> int:
    """Length of block `ell`, doubling from the base constant."""
    if ell < 1:
        raise UsageError(f"block index must be positive, got {ell}")
    return (2 ** (ell - 1)) * block_constant(d)


@dataclass(frozen=True)
class BlockRecord:
    """One elimination block: schedule, estimate, and surviving arms."""

    ell: int
    t_ell: int
    active_before: tuple[int, ...]
    pulls: int
    phi_hat: tuple[float, ...] | None
    threshold: float
    active_after: tuple[int, ...]
    complete: bool


@dataclass(frozen=True)
class EliminationState:
    """Terminal state of a phased-elimination run."""

    ell: int
    active: tuple[int, ...]
    phi_hat: tuple[float, ...] | None
    history: tuple[tuple[int, int, float], ...]
    blocks: tuple[BlockRecord, ...]


def _solve_estimate(G: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Least-squares estimate, projecting onto the span when G is singular."""
    try:
        phi = np.linalg.solve(G, b)
        if np.isfinite(phi).all():
            return phi
    except np.linalg.LinAlgError:
        pass
    return np.linalg.pinv(G, rcond=1e-10) @ b


def phased_elimination(
    env: Environment,
    X: ArmSet,
    horizon: int,
    delta: float,
    rng: Rng,
    *,
    max_blocks: int | None = None,
    block_budget: bool = False,
    design_tol: float = 0.05,
) -> tuple[tuple[tuple[int, int, float], ...], EliminationState]:
    """Block-structured elimination over the arm set up to the horizon.

    Each block computes a near-G-optimal design on the active arms, pulls
    each design arm ceil(T_ell * weight) times in index order, fits the
    linear estimate from the pull sums, and drops arms whose estimated gap
    exceeds the block threshold.  The run stops mid-block at the horizon
    without eliminating.  With ``block_budget`` the per-block pull total is
    capped at T_ell exactly, so a run of L full blocks uses sum-of-T_ell
    samples.  Deterministic given the rng.
    """
    if horizon < 1:
        raise UsageError(f"horizon must be positive, got {horizon}")
    if not 0 < delta <= 1:
        raise UsageError(f"confidence must lie in (0,1], got {delta}")
    d, k0 = X.dim, X.k
    A = X.matrix
    active: list[int] = list(range(k0))
    remaining = int(horizon)
    history: list[tuple[int, int, float]] = []
    blocks: list[BlockRecord] = []
    design_cache: dict[frozenset[int], np.ndarray] = {}
    phi_last: tuple[float, ...] | None = None
    ell = 0
    while remaining > 0 and (max_blocks is None or ell < max_blocks):
        ell += 1
        t_ell = block_length(d, ell)
        key = frozenset(active)
        weights = design_cache.get(key)
        if weights is None:
            sub = ArmSet(arms=tuple(X.arms[i] for i in active))
            sub_w = g_optimal_design(sub, tol=design_tol).weights
            weights = np.zeros(k0)
            for pos, arm in enumerate(active):
                weights[arm] = sub_w[pos]
            design_cache[key] = weights
        plan = [
            (arm, math.ceil(t_ell * weights[arm]))
            for arm in active
            if weights[arm] > 0
        ]
        budget = min(t_ell, remaining) if block_budget else remaining
        G = np.zeros((d, d))
        b = np.zeros(d)
        pulled = 0
        for arm, want in plan:
            count = min(want, budget - pulled)
            if count <= 0:
                break
            reward_sum = env.pull_sum(arm, count, rng)
            history.append((arm, count, reward_sum))
            x = A[arm]
            G += count * np.outer(x, x)
            b += reward_sum * x
            pulled += count
        remaining -= pulled
        planned = sum(c for _, c in plan)
        complete = pulled == (min(t_ell, planned) if block_budget else planned)
        if not complete:
            blocks.append(
                BlockRecord(
                    ell=ell,
                    t_ell=t_ell,
                    active_before=tuple(active),
                    pulls=pulled,
                    phi_hat=None,
                    threshold=math.nan,
                    active_after=tuple(active),
                    complete=False,
                )
            )
            break
        phi = _solve_estimate(G, b)
        phi_last = tuple(float(v) for v in phi)
        delta_ell = 6.0 * delta / (math.pi**2 * ell * ell)
        threshold = 2.0 * math.sqrt((4.0 * d / t_ell) * math.log(k0 / delta_ell))
        est = A[active] @ phi
        best = float(est.max())
        keep = [arm for arm, e in zip(active, est) if best - e <= threshold]
        blocks.append(
            BlockRecord(
                ell=ell,
                t_ell=t_ell,
                active_before=tuple(active),
                pulls=pulled,
                phi_hat=phi_last,
                threshold=threshold,
                active_after=tuple(keep),
                complete=True,
            )
        )
        active = keep
    state = EliminationState(
        ell=ell,
        active=tuple(active),
        phi_hat=phi_last,
        history=tuple(history),
        blocks=tuple(blocks),
    )
    return state.history, state


@dataclass(frozen=True)
class RegretRun:
    """One seeded regret run: curve plus the configuration that produced it."""

    seed: int
    horizon: int
    eps: float
    delta: float
    dimension: int
    n_arms: int
    opt_ref: float
    curve: np.ndarray
    state: EliminationState


def algorithm1_regret(
    inst: Instance,
    gamma: TypeDistribution,
    horizon: int,
    seed: int,
    *,
    design_tol: float = 0.05,
    env: ContractEnvironment | None = None,
) -> RegretRun:
    """Cumulative pseudo-regret of phased elimination over candidate arms.

    Sets the grid width to 1/sqrt(T) and the confidence to 1/T, then runs
    the elimination loop for exactly T rounds.  The regret reference is the
    best quadrature mean across candidate arms.  A prebuilt environment for
    the same instance and grid width may be passed to reuse arm tables and
    cached means across seeds.
    """
    if horizon < 1:
        raise UsageError(f"horizon must be positive, got {horizon}")
    eps = 1.0 / math.sqrt(horizon)
    if env is None:
        env = contract_environment(inst, gamma, eps)
    elif abs(env.eps - eps) > 1e-12:
        raise UsageError(
            f"environment grid width {env.eps} does not match horizon (needs {eps})"
        )
    X = env.arms
    rng = rng_new(seed)
    _, state = phased_elimination(
        env, X, horizon, 1.0 / horizon, rng, design_tol=design_tol
    )
    means = np.asarray([env.true_mean(a) for a in range(X.k)], dtype=float)
    opt_ref = float(means.max())
    per_round = np.concatenate(
        [np.full(count, opt_ref - means[arm]) for arm, count, _ in state.history]
    )
    return RegretRun(
        seed=seed,
        horizon=horizon,
        eps=eps,
        delta=1.0 / horizon,
        dimension=X.dim,
        n_arms=X.k,
        opt_ref=opt_ref,
        curve=np.cumsum(per_round),
        state=state,
    )


@dataclass(frozen=True)
class PacResult:
    """Fixed-confidence identification outcome on an arm set."""

    arm: int
    blocks: int
    samples: int
    eta: float
    delta: float
    alpha: float
    estimate: float
    state: EliminationState


def pac_blocks(d: int, k: int, eta: float, delta: float, alpha: float) -> int:
    """Number of elimination blocks for an eta-optimal arm at confidence delta."""
    if eta <= 0:
        raise UsageError(f"suboptimality target must be positive, got {eta}")
    if not 0 < delta < 1:
        raise UsageError(f"confidence must lie in (0,1), got {delta}")
    z = eta - 6.0 * alpha * math.sqrt(d)
    if z <= 0:
        raise UsageError(
            f"misspecification too large for the target: eta - 6*alpha*sqrt(d) = {z:.3g} <= 0"
        )
    inner = math.log(8.0 * k * math.pi**2 / (3.0 * delta * z * z))
    arg = (32.0 / (z * z)) * inner
    if arg <= 1.0:
        return 1
    return max(1, math.ceil(math.log2(arg)))


def pac_best_arm(
    env: Environment,
    X: ArmSet,
    eta: float,
    delta: float,
    rng: Rng,
    *,
    alpha: float = 0.0,
    design_tol: float = 0.05,
) -> PacResult:
    """Identify an eta-optimal arm by running a fixed number of blocks.

    Runs exactly ``pac_blocks`` full elimination blocks with per-block pull
    budgets, then returns the surviving arm with the highest last-block
    estimate (lowest index on ties).
    """
    d, k = X.dim, X.k
    if k == 1:
        blocks_needed = 1
    else:
        blocks_needed = pac_blocks(d, k, eta, delta, alpha)
    horizon = block_constant(d) * (2**blocks_needed - 1)
    _, state = phased_elimination(
        env,
        X,
        horizon,
        delta,
        rng,
        max_blocks=blocks_needed,
        block_budget=True,
        design_tol=design_tol,
    )
    phi = np.asarray(state.phi_hat, dtype=float)
    active = state.active
    est = X.matrix[list(active)] @ phi
    winner = active[int(np.argmax(est))]
    samples = sum(count for _, count, _ in state.history)
    return PacResult(
        arm=int(winner),
        blocks=blocks_needed,
        samples=samples,
        eta=float(eta),
        delta=float(delta),
        alpha=float(alpha),
        estimate=float(est.max()),
        state=state,
    )


@dataclass(frozen=True)
class PacContractResult:
    """Contract-level identification outcome with its resolved configuration."""

    contract: Contract
    arm: int
    samples: int
    blocks: int
    eta: float
    delta: float
    eps: float
    alpha: float
    dimension: int
    n_arms: int


def pac_best_contract(
    inst: Instance,
    gamma: TypeDistribution,
    eta: float,
    delta: float,
    seed: int,
) -> PacContractResult:
    """Find a near-optimal contract at fixed confidence by candidate-arm
    elimination.

    The grid width is (eta / (24 beta n))^2 with beta the density bound and
    n the action count; the induced misspecification is 2 beta n eps, which
    leaves slack eta/2 in the block-count calculation.  Guards refuse grids
    whose dimension would make candidate enumeration explode.
    """
    if eta <= 0:
        raise UsageError(f"suboptimality target must be positive, got {eta}")
    beta = float(dist.density_bound(gamma))
    n = inst.n_actions
    eps = min(1.0, (eta / (24.0 * beta * n)) ** 2)
    d = len(dist.grid_points(eps))
    if d > PAC_MAX_DIMENSION:
        raise ResourceGuardError(
            f"type grid too fine for exact candidate enumeration: eps={eps:.3g} "
            f"gives dimension {d} > {PAC_MAX_DIMENSION}; the candidate pool grows "
            "combinatorially in the grid size"
        )
    alpha = 2.0 * beta * n * eps
    env = contract_environment(inst, gamma, eps)
    rng = rng_new(seed)
    res = pac_best_arm(env, env.arms, eta, delta, rng, alpha=alpha)
    return PacContractResult(
        contract=env.arms.contracts[res.arm],
        arm=res.arm,
        samples=res.samples,
        blocks=res.blocks,
        eta=float(eta),
        delta=float(delta),
        eps=float(eps),
        alpha=float(alpha),
        dimension=d,
        n_arms=env.arms.k,
    )
