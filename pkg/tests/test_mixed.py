import math
import random

import pytest

from inoculation import (
    GameParams,
    MixedProfile,
    build_graph,
    check_classic_equilibrium,
    check_mixed_necessary_conditions,
    cycle_graph,
    expected_component_size,
    expected_social_cost_mixed,
    social_cost,
)
from oracles import random_graph


def test_profile_validation():
    with pytest.raises(ValueError):
        MixedProfile((0.5, 1.2))
    with pytest.raises(ValueError):
        MixedProfile((-0.1,))
    assert MixedProfile.pure(3, {1}).probs == (0.0, 1.0, 0.0)


def test_deterministic_profiles():
    g = cycle_graph(5)
    params = GameParams(C=2, L=1)
    res = expected_social_cost_mixed(params, g, MixedProfile((1.0,) * 5))
    assert res.cost == 10.0  # everyone pays C

    g3 = cycle_graph(3)
    res = expected_social_cost_mixed(GameParams(C=1, L=3), g3, MixedProfile((0.0,) * 3))
    assert res.cost == 9.0
    assert res.s_values == (3.0, 3.0, 3.0)


def test_half_inoculated_square():
    g = cycle_graph(4)
    params = GameParams(C=1, L=2)
    profile = MixedProfile((1.0, 0.0, 1.0, 0.0))
    res = expected_social_cost_mixed(params, g, profile)
    assert res.cost == 3.0
    assert res.s_values[1] == 1.0 and res.s_values[3] == 1.0
    assert res.s_values[0] == 3.0  # if 0 stayed vulnerable it would join 1 and 3
    assert expected_component_size(g, profile, 0) == 3.0


def test_expected_size_weighs_other_nodes():
    # path 0-1: S_0 = p_1 * 1 + (1-p_1) * 2
    g = build_graph(2, [(0, 1)])
    profile = MixedProfile((0.0, 0.25))
    assert expected_component_size(g, profile, 0) == 1.75


def test_degenerate_bridge_is_exact():
    rng = random.Random(23)
    for _ in range(150):
        n = rng.randint(1, 10)
        g = build_graph(n, random_graph(rng, n, 0.4))
        I = {v for v in range(n) if rng.random() < 0.5}
        params = GameParams(C=rng.choice([0.7, 1.0, 2.0]), L=rng.choice([1.0, 3.5]))
        res = expected_social_cost_mixed(params, g, MixedProfile.pure(n, I))
        assert res.cost == social_cost(params, g, I)


def test_exact_limit_guard():
    g = cycle_graph(17)
    with pytest.raises(ValueError):
        expected_social_cost_mixed(GameParams(C=1, L=1), g, MixedProfile((0.5,) * 17))
    with pytest.raises(ValueError):
        expected_social_cost_mixed(GameParams(C=1, L=1), cycle_graph(4),
                                   MixedProfile((0.5,) * 4), mode="nonsense")


def test_montecarlo_matches_exact():
    rng = random.Random(31)
    for trial in range(8):
        n = rng.randint(4, 10)
        g = build_graph(n, random_graph(rng, n, 0.45))
        profile = MixedProfile(tuple(rng.uniform(0.1, 0.9) for _ in range(n)))
        params = GameParams(C=1, L=2)
        exact = expected_social_cost_mixed(params, g, profile)
        mc = expected_social_cost_mixed(params, g, profile, mode="montecarlo",
                                        samples=40_000, seed=trial)
        assert mc.stderr is not None and mc.stderr > 0
        assert abs(mc.cost - exact.cost) <= 4 * mc.stderr + 1e-12


def test_montecarlo_is_seed_deterministic():
    g = cycle_graph(8)
    params = GameParams(C=1, L=1)
    profile = MixedProfile((0.3,) * 8)
    a = expected_social_cost_mixed(params, g, profile, mode="montecarlo", samples=5000, seed=99)
    b = expected_social_cost_mixed(params, g, profile, mode="montecarlo", samples=5000, seed=99)
    assert a.cost == b.cost and a.stderr == b.stderr
    # never-vulnerable nodes have no conditional samples
    sure = MixedProfile((1.0,) + (0.5,) * 7)
    res = expected_social_cost_mixed(params, g, sure, mode="montecarlo", samples=2000, seed=1)
    assert math.isnan(res.s_values[0])


def test_necessary_conditions_examples():
    g = cycle_graph(4)
    params = GameParams(C=1, L=2)  # threshold 2
    assert check_mixed_necessary_conditions(params, g, MixedProfile((1.0, 0.0, 1.0, 0.0))).is_equilibrium

    report = check_mixed_necessary_conditions(GameParams(C=1, L=4), cycle_graph(8),
                                              MixedProfile((0.0,) * 8))
    assert not report.is_equilibrium  # S_i = 8, threshold 2: everyone should inoculate
    assert len(report.violations) == 8
    assert all(v.deviation == "inoculate" for v in report.violations)


def test_pure_equilibria_pass_necessary_conditions():
    rng = random.Random(47)
    checked = 0
    for _ in range(120):
        n = rng.randint(2, 8)
        g = build_graph(n, random_graph(rng, n, 0.5))
        params = GameParams(C=1.0, L=rng.choice([0.5, 1.0, 2.0, 4.0]))
        I = {v for v in range(n) if rng.random() < 0.4}
        if not check_classic_equilibrium(params, g, I).is_equilibrium:
            continue
        checked += 1
        profile = MixedProfile.pure(n, I)
        assert check_mixed_necessary_conditions(params, g, profile).is_equilibrium, (n, sorted(I))
    assert checked > 20  # the loop must actually exercise equilibria


def test_fractional_indifference_tolerance():
    # two isolated nodes: S_i = 1 regardless; with threshold exactly 1 every
    # mixture is indifferent
    g = build_graph(2, [])
    params = GameParams(C=1, L=2)
    profile = MixedProfile((0.3, 0.8))
    assert check_mixed_necessary_conditions(params, g, profile).is_equilibrium
    off = GameParams(C=1, L=2.1)  # threshold drops below 1: fractional nodes fail
    assert not check_mixed_necessary_conditions(off, g, profile).is_equilibrium
