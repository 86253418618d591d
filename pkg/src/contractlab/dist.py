"""Type distributions over [0,1]: interval-mass oracle, density bound,
inverse-CDF sampling, and the half-offset discretization grid."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import TypeAlias, Union

import numpy as np

from .errors import UsageError
from .numerics import Num, Rng, as_fraction, is_exact

_SUM_TOL = 1e-12


def _check_simplex(weights: tuple, what: str) -> None:
    if any(w < 0 for w in weights):
        raise UsageError(f"{what} must be nonnegative")
    total = sum(weights)
    if is_exact(*weights):
        if total != 1:
            raise UsageError(f"{what} must sum to 1 exactly, got {total}")
    elif abs(total - 1.0) > _SUM_TOL:
        raise UsageError(f"{what} must sum to 1, got {total!r}")


@dataclass(frozen=True)
class Discrete:
    """Finite support on [0,1]; points strictly increasing, weights a simplex."""

    points: tuple[Num, ...]
    weights: tuple[Num, ...]

    def __post_init__(self) -> None:
        if len(self.points) != len(self.weights) or not self.points:
            raise UsageError("points and weights must be equal nonzero length")
        if any(p < 0 or p > 1 for p in self.points):
            raise UsageError("points must lie in [0,1]")
        if any(a <= b for a, b in zip(self.points[1:], self.points)):
            raise UsageError("points must be strictly increasing")
        _check_simplex(self.weights, "weights")

    @cached_property
    def _cum(self) -> np.ndarray:
        return np.cumsum(np.asarray(self.weights, dtype=float))


@dataclass(frozen=True)
class PiecewiseConstant:
    """Density constant on [b_j, b_{j+1}) with 0 = b_0 < ... < b_K = 1."""

    breakpoints: tuple[Num, ...]
    densities: tuple[Num, ...]

    def __post_init__(self) -> None:
        bp, dens = self.breakpoints, self.densities
        if len(bp) < 2 or len(dens) != len(bp) - 1:
            raise UsageError("need K+1 breakpoints for K densities")
        if bp[0] != 0 or bp[-1] != 1:
            raise UsageError("breakpoints must start at 0 and end at 1")
        if any(a <= b for a, b in zip(bp[1:], bp)):
            raise UsageError("breakpoints must be strictly increasing")
        if any(d < 0 for d in dens):
            raise UsageError("densities must be nonnegative")
        total = sum(d * (hi - lo) for d, lo, hi in zip(dens, bp, bp[1:]))
        if is_exact(*bp, *dens):
            if total != 1:
                raise UsageError(f"density must integrate to 1 exactly, got {total}")
        elif abs(total - 1.0) > _SUM_TOL:
            raise UsageError(f"density must integrate to 1, got {total!r}")

    @cached_property
    def _cum(self) -> np.ndarray:
        bp = np.asarray(self.breakpoints, dtype=float)
        dens = np.asarray(self.densities, dtype=float)
        return np.concatenate(([0.0], np.cumsum(dens * np.diff(bp))))


TypeDistribution: TypeAlias = Union[Discrete, PiecewiseConstant]


def uniform_distribution() -> PiecewiseConstant:
    return PiecewiseConstant((Fraction(0), Fraction(1)), (Fraction(1),))


def density_bound(d: TypeDistribution) -> Num:
    """sup of the density; defined only for the continuous variant."""
    if isinstance(d, Discrete):
        raise UsageError("density_bound requires a continuous distribution")
    return max(d.densities)


def interval_mass(
    d: TypeDistribution, lo: Num, hi: Num, closed_lo: bool = False
) -> Num:
    """P[theta in (lo, hi]], or [lo, hi] when closed_lo. Exact on exact inputs."""
    if lo < 0 or hi > 1 or lo > hi:
        raise UsageError(f"need 0 <= lo <= hi <= 1, got ({lo}, {hi})")
    if isinstance(d, Discrete):
        total = 0
        for p, w in zip(d.points, d.weights):
            if (lo < p or (closed_lo and p == lo)) and p <= hi:
                total += w
        return total
    total = 0
    for dens, a, b in zip(d.densities, d.breakpoints, d.breakpoints[1:]):
        left = lo if lo > a else a
        right = hi if hi < b else b
        if right > left:
            total += dens * (right - left)
    return total


def cdf(d: TypeDistribution, x: "float | np.ndarray") -> "float | np.ndarray":
    """P[theta <= x], float arithmetic, vectorized over numpy inputs."""
    xs = np.asarray(x, dtype=float)
    if isinstance(d, Discrete):
        pts = np.asarray(d.points, dtype=float)
        idx = np.searchsorted(pts, xs, side="right")
        cum = np.concatenate(([0.0], d._cum))
        out = cum[idx]
    else:
        bp = np.asarray(d.breakpoints, dtype=float)
        dens = np.asarray(d.densities, dtype=float)
        seg = np.clip(np.searchsorted(bp, xs, side="right") - 1, 0, len(dens) - 1)
        out = d._cum[seg] + dens[seg] * (xs - bp[seg])
        out = np.clip(out, 0.0, 1.0)
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


@dataclass(frozen=True)
class DiscreteTypeInstance:
    """Finite type grid theta_1 < ... < theta_k with simplex weights."""

    types: tuple[Num, ...]
    weights: tuple[Num, ...]

    def __post_init__(self) -> None:
        if len(self.types) != len(self.weights) or not self.types:
            raise UsageError("types and weights must be equal nonzero length")
        if any(t < 0 or t > 1 for t in self.types):
            raise UsageError("types must lie in [0,1]")
        if any(a <= b for a, b in zip(self.types[1:], self.types)):
            raise UsageError("types must be strictly increasing")
        _check_simplex(self.weights, "weights")

    @cached_property
    def types_arr(self) -> np.ndarray:
        return np.asarray(self.types, dtype=float)

    @cached_property
    def weights_arr(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)


def grid_points(delta: Num) -> tuple[Num, ...]:
    """Half-offset grid theta_i = (i - 1/2) * delta for i = 1..ceil(1/delta),
    with the last point clamped to 1 when it would overshoot."""
    if delta <= 0 or delta > 1:
        raise UsageError(f"grid width must lie in (0,1], got {delta}")
    if is_exact(delta):
        dlt = as_fraction(delta)
        k = math.ceil(Fraction(1) / dlt)
        pts = [(Fraction(2 * i - 1, 2)) * dlt for i in range(1, k + 1)]
    else:
        k = math.ceil(1.0 / float(delta) - 1e-12)
        pts = [(i - 0.5) * float(delta) for i in range(1, k + 1)]
    if pts[-1] > 1:
        pts[-1] = Fraction(1) if is_exact(delta) else 1.0
    return tuple(pts)


def discretize(d: TypeDistribution, delta: Num) -> DiscreteTypeInstance:
    """Cell masses on the tiling ((i-1)*delta, i*delta] (first cell closed at
    0, last cell clipped at 1) attached to the half-offset grid points, so the
    weights always sum to the full mass."""
    pts = grid_points(delta)
    k = len(pts)
    one = Fraction(1) if is_exact(delta) else 1.0
    weights = []
    for i in range(1, k + 1):
        lo = (i - 1) * delta
        hi = i * delta
        if hi > 1:
            hi = one
        weights.append(interval_mass(d, lo, hi, closed_lo=(i == 1)))
    return DiscreteTypeInstance(tuple(pts), tuple(weights))


def sample(d: TypeDistribution, rng: Rng) -> float:
    """One inverse-CDF draw."""
    return float(sample_many(d, rng, 1)[0])


def sample_many(d: TypeDistribution, rng: Rng, size: int) -> np.ndarray:
    """Vectorized inverse-CDF sampling; empirical interval frequencies
    converge to interval_mass at the usual 1/sqrt(N) rate."""
    u = rng.gen.random(size)
    if isinstance(d, Discrete):
        pts = np.asarray(d.points, dtype=float)
        idx = np.searchsorted(d._cum, u, side="left")
        idx = np.clip(idx, 0, len(pts) - 1)
        return pts[idx]
    bp = np.asarray(d.breakpoints, dtype=float)
    dens = np.asarray(d.densities, dtype=float)
    cum = d._cum
    seg = np.clip(np.searchsorted(cum, u, side="left") - 1, 0, len(dens) - 1)
    # zero-density segments carry no mass, so u > cum[seg] implies dens > 0
    safe = np.where(dens[seg] > 0, dens[seg], 1.0)
    return bp[seg] + (u - cum[seg]) / safe
