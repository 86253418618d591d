"""Instance model, best responses, robustification, expected utilities."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from contractlab import (
    Instance,
    UsageError,
    agent_utility,
    best_response,
    eps_best_responses,
    expected_principal_utility,
    expected_principal_utility_continuous,
    principal_utility,
    robustify,
)
from contractlab.core import best_response_breakpoints
from contractlab.dist import cdf
from helpers import (
    brute_best_response,
    random_contract,
    random_dti,
    random_instance,
    random_piecewise,
)

F = Fraction


# ---------------------------------------------------------------------------
# Instance validation
# ---------------------------------------------------------------------------


def test_instance_validation():
    good = dict(F=((F(1, 2), F(1, 2)),), r=(F(0), F(1)), c=(F(0),))
    Instance(**good)
    with pytest.raises(UsageError):
        Instance(F=((F(1, 2), F(1, 4)),), r=(F(0), F(1)), c=(F(0),))  # row sum
    with pytest.raises(UsageError):
        Instance(F=((F(1, 2), F(1, 2)),), r=(F(0), F(2)), c=(F(0),))  # r > 1
    with pytest.raises(UsageError):
        Instance(F=((F(1, 2), F(1, 2)),), r=(F(0), F(1)), c=(F(-1),))  # c < 0
    with pytest.raises(UsageError):
        Instance(F=((F(1, 2), F(1, 2)),), r=(F(0), F(1)), c=(F(1),))  # no free action
    with pytest.raises(UsageError):
        Instance(F=((F(1, 2), F(1, 2)),), r=(F(0), F(1)), c=(F(0), F(1)))  # shape


# ---------------------------------------------------------------------------
# Pointwise utilities
# ---------------------------------------------------------------------------


def test_utilities_closed_form(desk_instance):
    p = (F(0), F(1, 2))
    assert agent_utility(desk_instance, p, 0, F(1, 3)) == 0
    assert agent_utility(desk_instance, p, 1, F(1, 3)) == F(1, 2) - F(1, 6)
    assert principal_utility(desk_instance, p, 0) == 0
    assert principal_utility(desk_instance, p, 1) == F(1, 2)


def test_full_reward_payment_zeroes_principal(desk_instance):
    p = desk_instance.r
    for a in range(desk_instance.n_actions):
        assert principal_utility(desk_instance, p, a) == 0


def test_null_contract_pays_reward_mean():
    gen = random.Random(1)
    inst = random_instance(gen, 3, 3)
    zero = (F(0),) * 3
    for a in range(3):
        expect = sum(f * rw for f, rw in zip(inst.F[a], inst.r))
        assert principal_utility(inst, zero, a) == expect


def test_contract_validation(desk_instance):
    with pytest.raises(UsageError):
        agent_utility(desk_instance, (F(0),), 0, F(0))
    with pytest.raises(UsageError):
        principal_utility(desk_instance, (F(0), F(-1, 2)), 0)
    with pytest.raises(UsageError):
        agent_utility(desk_instance, (F(0), F(0)), 5, F(0))


# ---------------------------------------------------------------------------
# Best response and tie-breaking
# ---------------------------------------------------------------------------


def test_best_response_tie_favors_principal(desk_instance):
    # theta = 1/2, p = (0, 1/4): idle gives 0, work gives 1/4 - 1/4 = 0 (tie);
    # work pays the principal 3/4 vs 0, so the tie resolves to work.
    br = best_response(desk_instance, (F(0), F(1, 4)), F(1, 2))
    assert br.action == 1
    assert br.agent_utility == 0
    assert br.principal_utility == F(3, 4)
    assert br.ic_set == frozenset({0, 1})


def test_best_response_tie_then_lowest_index():
    # two identical rows: agent and principal utilities tie, index 0 wins
    inst = Instance(
        F=((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2))),
        r=(F(0), F(1)),
        c=(F(0), F(0)),
    )
    br = best_response(inst, (F(0), F(1, 3)), F(1, 2))
    assert br.action == 0


def test_best_response_float_tolerance(desk_instance):
    # utilities differing by less than 1e-9 on float data count as tied,
    # so the principal-favorable action wins despite the tiny deficit
    br = best_response(desk_instance, (0.0, 0.25 - 1e-12), 0.5)
    assert br.action == 1


def test_best_response_matches_bruteforce():
    gen = random.Random(7)
    for _ in range(60):
        inst = random_instance(gen, gen.randrange(2, 5), gen.randrange(2, 4))
        p = random_contract(gen, inst.n_outcomes)
        theta = F(gen.randrange(0, 13), 12)
        got = best_response(inst, p, theta)
        want_action, want_au, want_pu = brute_best_response(inst, p, theta)
        assert got.action == want_action
        assert got.agent_utility == want_au
        assert got.principal_utility == want_pu


def test_eps_best_responses_brute_filter():
    gen = random.Random(13)
    for _ in range(40):
        inst = random_instance(gen, gen.randrange(2, 5), gen.randrange(2, 4))
        p = random_contract(gen, inst.n_outcomes)
        theta = F(gen.randrange(0, 13), 12)
        eps = F(gen.randrange(0, 4), 20)
        got = eps_best_responses(inst, p, theta, eps)
        utils = [agent_utility(inst, p, a, theta) for a in range(inst.n_actions)]
        top = max(utils)
        want = [a for a, u in enumerate(utils) if u >= top - eps]
        assert got == want


def test_eps_monotone_and_extremes(desk_instance):
    p = (F(0), F(1, 8))
    theta = F(3, 4)
    small = eps_best_responses(desk_instance, p, theta, F(1, 100))
    large = eps_best_responses(desk_instance, p, theta, F(2))
    assert set(small) <= set(large)
    assert large == [0, 1]  # eps above the utility spread admits everything
    zero_p = (F(0), F(0))
    assert eps_best_responses(desk_instance, zero_p, F(1, 2), 0) == [0]


def test_eps_negative_rejected(desk_instance):
    with pytest.raises(UsageError):
        eps_best_responses(desk_instance, (F(0), F(0)), F(0), F(-1))


def test_membership_transfers_with_type_shift():
    # an exact best response at a nearby type stays eps-best at distance eps
    gen = random.Random(19)
    for _ in range(40):
        inst = random_instance(gen, 3, 2)
        p = random_contract(gen, 2)
        theta = F(gen.randrange(0, 25), 24)
        diam = F(1, gen.randrange(4, 12))
        shift = F(gen.randrange(-2, 3), 24)
        other = min(max(theta + shift, F(0)), F(1))
        if abs(other - theta) > diam:
            continue
        a = best_response(inst, p, other).action
        assert a in eps_best_responses(inst, p, theta, diam)


def test_best_response_interval_structure():
    gen = random.Random(23)
    for _ in range(10):
        inst = random_instance(gen, 4, 3)
        p = random_contract(gen, 3)
        grid = [F(i, 200) for i in range(201)]
        chosen = [best_response(inst, p, t).action for t in grid]
        for a in set(chosen):
            hits = [i for i, b in enumerate(chosen) if b == a]
            assert hits == list(range(hits[0], hits[-1] + 1))


# ---------------------------------------------------------------------------
# Robustification
# ---------------------------------------------------------------------------


def test_robustify_identity_and_full(desk_instance):
    p = (F(1, 5), F(3, 5))
    assert robustify(desk_instance, p, F(0)) == p
    assert robustify(desk_instance, p, F(1)) == desk_instance.r


def test_robustify_componentwise():
    inst = Instance(
        F=((F(1, 2), F(1, 2)),), r=(F(1), F(0)), c=(F(0),)
    )
    assert robustify(inst, (F(1, 5), F(3, 5)), F(1, 2)) == (F(3, 5), F(3, 10))


def test_robustify_bounded_cap(desk_instance):
    # unbounded contracts may exceed 1; bounded mode caps the mix at 1
    assert robustify(desk_instance, (F(0), F(3, 2)), F(1, 2), bounded=True) == (
        F(0),
        F(1),
    )
    assert robustify(desk_instance, (F(0), F(3, 2)), F(1, 2)) == (F(0), F(5, 4))


def test_robustify_alpha_validation(desk_instance):
    with pytest.raises(UsageError):
        robustify(desk_instance, (F(0), F(0)), F(3, 2))


# ---------------------------------------------------------------------------
# Expected utilities
# ---------------------------------------------------------------------------


def test_expected_utility_matches_per_type_loop():
    gen = random.Random(29)
    for _ in range(20):
        inst = random_instance(gen, 3, 3)
        dti = random_dti(gen, 3)
        p = random_contract(gen, 3)
        got = expected_principal_utility(inst, dti, p)
        want = sum(
            w * best_response(inst, p, t).principal_utility
            for t, w in zip(dti.types, dti.weights)
        )
        assert got == want


def test_expected_utility_full_reward_is_zero(desk_instance):
    gen = random.Random(31)
    dti = random_dti(gen, 2)
    assert expected_principal_utility(desk_instance, dti, desk_instance.r) == 0


def test_breakpoints_desk(desk_instance):
    # work beats idle iff p2 - theta/2 >= 0, crossing at theta = 2 p2
    assert best_response_breakpoints(desk_instance, (F(0), F(1, 4))) == [0.5]
    assert best_response_breakpoints(desk_instance, (F(0), F(3, 4))) == []


def test_continuous_value_closed_form(desk_instance, uniform_gamma):
    # uniform types: value of p = (0, x) is (1 - x) * min(1, 2x)
    for x in (0.2, 0.375, 0.6):
        got = expected_principal_utility_continuous(
            desk_instance, uniform_gamma, (0.0, x)
        )
        assert got == pytest.approx((1 - x) * min(1.0, 2 * x), abs=1e-9)


def test_continuous_value_piecewise_closed_form(desk_instance):
    gen = random.Random(37)
    for _ in range(5):
        gamma = random_piecewise(gen)
        x = gen.randrange(1, 10) / 20
        got = expected_principal_utility_continuous(desk_instance, gamma, (0.0, x))
        want = (1 - x) * float(cdf(gamma, min(1.0, 2 * x)))
        assert got == pytest.approx(want, abs=1e-9)


def test_continuous_value_discrete_atoms(desk_instance):
    from contractlab import Discrete

    gamma = Discrete(points=(F(1, 4), F(3, 4)), weights=(F(1, 2), F(1, 2)))
    got = expected_principal_utility_continuous(desk_instance, gamma, (0.0, 0.25))
    # theta = 1/4 works (utility 1/8), theta = 3/4 idles: value = (1 - 1/4)/2
    assert got == pytest.approx(0.375)
