"""Shared generators and independent oracles for the test suite.

Oracles here deliberately avoid the library's own code paths: brute-force
grids, direct enumeration, and closed-form recomputation, so every check
compares two independent routes to the same number.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from contractlab import DiscreteTypeInstance, Instance
from contractlab.dist import PiecewiseConstant, cdf
from contractlab.hardness import SetCoverInput


# ---------------------------------------------------------------------------
# Random rational objects (small denominators keep exact LPs fast)
# ---------------------------------------------------------------------------


def random_instance(
    gen: random.Random, n: int, m: int, denom: int = 12
) -> Instance:
    rows = []
    for _ in range(n):
        cuts = sorted(gen.randrange(0, denom + 1) for _ in range(m - 1))
        row = []
        prev = 0
        for cut in cuts + [denom]:
            row.append(Fraction(cut - prev, denom))
            prev = cut
        rows.append(tuple(row))
    c = [Fraction(gen.randrange(0, denom + 1), denom) for _ in range(n)]
    c[gen.randrange(n)] = Fraction(0)
    r = tuple(Fraction(gen.randrange(0, denom + 1), denom) for _ in range(m))
    return Instance(F=tuple(rows), r=r, c=tuple(c))


def random_dti(gen: random.Random, k: int, denom: int = 12) -> DiscreteTypeInstance:
    types = sorted(gen.sample(range(denom + 1), k))
    w = [gen.randrange(1, 5) for _ in range(k)]
    s = sum(w)
    return DiscreteTypeInstance(
        types=tuple(Fraction(t, denom) for t in types),
        weights=tuple(Fraction(x, s) for x in w),
    )


def random_contract(
    gen: random.Random, m: int, denom: int = 24, hi: int = 1
) -> tuple[Fraction, ...]:
    return tuple(Fraction(gen.randrange(0, hi * denom + 1), denom) for _ in range(m))


def random_piecewise(
    gen: random.Random, pieces: int = 3, denom: int = 8
) -> PiecewiseConstant:
    cuts = sorted(gen.sample(range(1, denom), pieces - 1))
    bps = [Fraction(0)] + [Fraction(x, denom) for x in cuts] + [Fraction(1)]
    raw = [Fraction(gen.randrange(1, 6)) for _ in range(pieces)]
    total = sum(w * (b - a) for w, a, b in zip(raw, bps, bps[1:]))
    dens = tuple(w / total for w in raw)
    return PiecewiseConstant(breakpoints=tuple(bps), densities=dens)


def random_setcover(gen: random.Random) -> SetCoverInput:
    """Random covered system: n in 2..4, m in 1..5, union equals universe."""
    while True:
        n = gen.randrange(2, 5)
        m = gen.randrange(1, 6)
        sets = []
        for _ in range(m):
            size = gen.randrange(1, n + 1)
            sets.append(tuple(sorted(gen.sample(range(1, n + 1), size))))
        if set().union(*map(set, sets)) == set(range(1, n + 1)):
            return SetCoverInput(n=n, sets=tuple(sets))


def min_cover(sc: SetCoverInput) -> tuple[int, ...]:
    """Smallest cover by exhaustive subset search (independent of the
    library's own cover routines). Returns 1-based set ids."""
    universe = set(range(1, sc.n + 1))
    for size in range(1, sc.m + 1):
        for ids in itertools.combinations(range(1, sc.m + 1), size):
            if set().union(*(set(sc.sets[i - 1]) for i in ids)) == universe:
                return ids
    raise AssertionError("system does not cover its universe")


def three_element_setcover() -> SetCoverInput:
    return SetCoverInput(n=3, sets=((1, 2), (2,), (1, 3), (3,)))


# ---------------------------------------------------------------------------
# Brute-force value oracles
# ---------------------------------------------------------------------------


def payment_grid(m: int, step: float) -> np.ndarray:
    pts = np.linspace(0.0, 1.0, round(1.0 / step) + 1)
    mesh = np.meshgrid(*([pts] * m), indexing="ij")
    return np.stack([g.ravel() for g in mesh], axis=1)


def grid_values(
    inst: Instance, dti: DiscreteTypeInstance, P: np.ndarray, tol: float = 1e-9
) -> np.ndarray:
    """Expected principal utility of every payment row of P, recomputed from
    scratch: agent utilities, favorable tie-break within tol, weighted sum."""
    F, r, c = inst.F_arr, inst.r_arr, inst.c_arr
    pay = P @ F.T
    base = F @ r
    total = np.zeros(len(P))
    for theta, w in zip(dti.types_arr, dti.weights_arr):
        au = pay - theta * c
        eligible = au >= au.max(axis=1, keepdims=True) - tol
        total += w * np.where(eligible, base - pay, -np.inf).max(axis=1)
    return total


def grid_best(inst: Instance, dti: DiscreteTypeInstance, step: float = 0.01) -> float:
    return float(grid_values(inst, dti, payment_grid(inst.n_outcomes, step)).max())


def grid_best_continuous(
    inst: Instance, gamma, step: float = 0.01, cells: int = 2000
) -> float:
    """Best grid-contract value against a continuous distribution, using a
    fine type discretization (cell masses from the distribution's CDF)."""
    edges = np.linspace(0.0, 1.0, cells + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    masses = np.diff(cdf(gamma, edges))
    P = payment_grid(inst.n_outcomes, step)
    F, r, c = inst.F_arr, inst.r_arr, inst.c_arr
    pay = P @ F.T
    base = F @ r
    total = np.zeros(len(P))
    for theta, w in zip(mids, masses):
        if w == 0.0:
            continue
        au = pay - theta * c
        eligible = au >= au.max(axis=1, keepdims=True) - 1e-9
        total += w * np.where(eligible, base - pay, -np.inf).max(axis=1)
    return float(total.max())


def brute_best_response(inst: Instance, p, theta) -> tuple[int, object, object]:
    """Exact-arithmetic reference: scan all actions, keep agent maximizers,
    break ties by principal utility then lowest index."""
    scored = []
    for a in range(inst.n_actions):
        au = sum(f * x for f, x in zip(inst.F[a], p)) - theta * inst.c[a]
        pu = sum(f * (rw - x) for f, rw, x in zip(inst.F[a], inst.r, p))
        scored.append((a, au, pu))
    top = max(s[1] for s in scored)
    tied = [s for s in scored if s[1] == top]
    best_pu = max(s[2] for s in tied)
    winner = min(s[0] for s in tied if s[2] == best_pu)
    au = scored[winner][1]
    pu = scored[winner][2]
    return winner, au, pu


# ---------------------------------------------------------------------------
# Statistics helpers
# ---------------------------------------------------------------------------


def ks_statistic(samples: np.ndarray, cdf_values: np.ndarray) -> float:
    """max |empirical CDF - model CDF| over the sample points; cdf_values
    must correspond to the sorted samples."""
    n = len(samples)
    upper = np.arange(1, n + 1) / n - cdf_values
    lower = cdf_values - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


def chi_square(counts: np.ndarray, expected: np.ndarray) -> float:
    return float(((counts - expected) ** 2 / expected).sum())
