"""Exact optimal contracts for discrete-type instances by action-tuple
enumeration, and the finite distribution-free candidate contract set."""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import core
from .core import Contract, Instance
from .dist import DiscreteTypeInstance
from .errors import ResourceGuardError, UsageError
from .numerics import (
    LPResult,
    Num,
    RationalLP,
    as_fraction,
    lp_solve,
    rational_solve,
)

TUPLE_GUARD = 10**7
BASIS_GUARD = 10**7
CANDIDATE_MAX_OUTCOMES = 4

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class SolveReport:
    best_contract: Contract
    value: Fraction
    tuples_solved: int
    per_tuple: tuple[tuple[tuple[int, ...], str, Fraction | None], ...] | None = None


def _thread_count() -> int:
    raw = os.environ.get("CONTRACTLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def contract_for_tuple(
    inst: Instance,
    dti: DiscreteTypeInstance,
    actions: Sequence[int],
    bounded: bool = False,
) -> LPResult:
    """LP for one action-per-type assignment: maximize expected principal
    utility subject to every assigned action being incentive compatible for
    its type, payments >= 0 (and <= 1 in the bounded regime)."""
    k = len(dti.types)
    if len(actions) != k:
        raise UsageError(f"tuple has {len(actions)} entries, expected {k}")
    for a in actions:
        if not 0 <= a < inst.n_actions:
            raise UsageError(f"action index {a} out of range")
    m = inst.n_outcomes
    F = [[as_fraction(x) for x in row] for row in inst.F]
    r = [as_fraction(x) for x in inst.r]
    c = [as_fraction(x) for x in inst.c]
    gamma = [as_fraction(w) for w in dti.weights]
    thetas = [as_fraction(t) for t in dti.types]

    # objective: const - sum_w (sum_i gamma_i F[a_i, w]) p_w
    weight = [_ZERO] * m
    const = _ZERO
    for i, a in enumerate(actions):
        const += gamma[i] * sum(f * rw for f, rw in zip(F[a], r))
        for w in range(m):
            weight[w] += gamma[i] * F[a][w]
    objective = [-x for x in weight]

    rows: list[tuple[list[Fraction], str, Fraction]] = []
    for i, a in enumerate(actions):
        for b in range(inst.n_actions):
            if b == a:
                continue
            coeffs = [F[a][w] - F[b][w] for w in range(m)]
            rows.append((coeffs, ">=", thetas[i] * (c[a] - c[b])))
    ub = tuple(_ONE for _ in range(m)) if bounded else None
    lp = RationalLP(
        objective=tuple(objective),
        constraints=tuple((tuple(co), rel, rhs) for co, rel, rhs in rows),
        upper_bounds=ub,
        constant=const,
    )
    return lp_solve(lp)


def _iter_tuples(n: int, k: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(n), repeat=k)


def solve_discrete_optimal(
    inst: Instance,
    dti: DiscreteTypeInstance,
    bounded: bool = False,
    collect_per_tuple: bool = False,
) -> SolveReport:
    """Exact maximum over all n^k per-tuple LPs; tuple ties resolve in
    lexicographic order. The reported value is recomputed through the model
    evaluation path, which agrees with the winning LP value exactly."""
    n, k = inst.n_actions, len(dti.types)
    count = n**k
    if count > TUPLE_GUARD:
        raise ResourceGuardError(
            f"tuple enumeration would solve {count} LPs "
            f"({n} actions ^ {k} types), above the guard of {TUPLE_GUARD}"
        )

    def solve_one(tup: tuple[int, ...]) -> tuple[tuple[int, ...], LPResult]:
        return tup, contract_for_tuple(inst, dti, tup, bounded)

    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = pool.map(solve_one, _iter_tuples(n, k), chunksize=64)
            results = list(results)
    else:
        results = map(solve_one, _iter_tuples(n, k))

    best_value: Fraction | None = None
    best_point: tuple[Fraction, ...] | None = None
    log: list[tuple[tuple[int, ...], str, Fraction | None]] = []
    solved = 0
    for tup, res in results:
        solved += 1
        if collect_per_tuple:
            log.append((tup, res.status, res.value))
        if res.status != "optimal":
            continue
        assert res.value is not None and res.point is not None
        if best_value is None or res.value > best_value:
            best_value = res.value
            best_point = res.point
    if best_point is None:
        raise UsageError("no feasible action tuple; instance is inconsistent")
    value = core.expected_principal_utility(inst, dti, best_point)
    return SolveReport(
        best_contract=best_point,
        value=as_fraction(value),
        tuples_solved=solved,
        per_tuple=tuple(log) if collect_per_tuple else None,
    )


def _canonical_row(
    coeffs: tuple[Fraction, ...], rhs: Fraction
) -> tuple[tuple[Fraction, ...], Fraction] | None:
    lead = next((x for x in coeffs if x != 0), None)
    if lead is None:
        return None
    return tuple(x / lead for x in coeffs), rhs / lead


def candidate_contract_set(
    inst: Instance, types: Sequence[Num], bounded: bool = True
) -> tuple[Contract, ...]:
    """Finite set of contracts in [0,1]^m containing an expected-utility
    maximizer for every weight vector over the given types: all basic
    solutions of m constraints drawn from the incentive hyperplanes and the
    box facets, filtered to the box and deduplicated exactly."""
    if not bounded:
        raise UsageError("the candidate set is defined for the bounded regime")
    m = inst.n_outcomes
    if m > CANDIDATE_MAX_OUTCOMES:
        raise ResourceGuardError(
            f"candidate enumeration supports at most "
            f"{CANDIDATE_MAX_OUTCOMES} outcomes, got {m}"
        )
    F = [[as_fraction(x) for x in row] for row in inst.F]
    c = [as_fraction(x) for x in inst.c]

    pool: dict[tuple[tuple[Fraction, ...], Fraction], None] = {}
    for a in range(inst.n_actions):
        for b in range(a + 1, inst.n_actions):
            coeffs = tuple(F[a][w] - F[b][w] for w in range(m))
            dc = c[a] - c[b]
            for t in types:
                row = _canonical_row(coeffs, as_fraction(t) * dc)
                if row is not None:
                    pool.setdefault(row, None)
    for w in range(m):
        unit = tuple(_ONE if j == w else _ZERO for j in range(m))
        pool.setdefault((unit, _ZERO), None)
        pool.setdefault((unit, _ONE), None)

    rows = list(pool)
    combos = math.comb(len(rows), m)
    if combos > BASIS_GUARD:
        raise ResourceGuardError(
            f"candidate enumeration would test {combos} bases "
            f"({len(rows)} constraints choose {m}), above the guard of {BASIS_GUARD}"
        )

    seen: dict[tuple[Fraction, ...], None] = {}
    for chosen in itertools.combinations(rows, m):
        point = rational_solve([row for row, _ in chosen], [rhs for _, rhs in chosen])
        if point is None:
            continue
        if all(0 <= x <= 1 for x in point):
            seen.setdefault(tuple(point), None)
    return tuple(sorted(seen))
