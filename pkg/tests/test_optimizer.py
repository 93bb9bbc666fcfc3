"""Tests for the swarm and genetic maximizers and their solve wrappers."""

import numpy as np
import pytest

from it2rrap import (
    Candidate,
    GaConfig,
    IdealBounds,
    SERIES_PARALLEL,
    SwarmConfig,
    SystemSpec,
    bundled_dataset,
    constriction,
    crisp_metrics,
    evolve_maximize,
    genetic_solve,
    is_feasible,
    swarm_maximize,
    swarm_solve,
)

BOX_LO = np.full(4, -5.0)
BOX_HI = np.full(4, 5.0)


def sphere(x):
    """Concave smoke objective with its maximum, 0, at 0.7 everywhere."""
    return -float(np.sum((x - 0.7) ** 2))


def ps_problem():
    ds = bundled_dataset("parallel-series")
    return ds.spec, ds.bounds[(1.0, 1.0)]


# ---------------------------------------------------------------------------
# the constriction coefficient
# ---------------------------------------------------------------------------

def test_constriction_below_threshold_is_k():
    """With both pulls at 1.5 the combined pull is 3 < 4, so the complex
    magnitude of the denominator is exactly 2 and the scale is k itself."""
    assert constriction(0.5, 1.5, 1.5, 1.0, 1.0) == 0.5
    assert constriction(1.0, 1.5, 1.5, 0.3, 0.9) == 1.0


def test_constriction_hand_values_above_threshold():
    got = constriction(1.0, 2.05, 2.05, 1.0, 1.0)  # combined pull 4.1
    assert got == pytest.approx(0.7298437881283575, rel=1e-12)
    assert got == pytest.approx(0.7299, abs=1e-4)
    got = constriction(1.0, 2.5, 2.5, 1.0, 1.0)  # combined pull 5
    assert got == pytest.approx(0.38196601125010515, rel=1e-12)


def test_constriction_zero_k_kills_motion():
    assert constriction(0.0, 1.5, 1.5, 1.0, 1.0) == 0.0
    assert constriction(0.0, 2.5, 2.5, 1.0, 1.0) == 0.0


def test_constriction_vectorized_and_bounded():
    rng = np.random.default_rng(3)
    u1, u2 = rng.random(500), rng.random(500)
    out = constriction(0.8, 1.5, 1.5, u1, u2)
    assert out.shape == (500,)
    # pulls of 1.5 never reach the threshold, so every entry equals k
    assert np.all(out == 0.8)
    out = constriction(0.8, 2.5, 2.5, u1, u2)
    assert np.all(out > 0.0)
    assert np.all(out <= 0.8)


# ---------------------------------------------------------------------------
# configuration validation
# ---------------------------------------------------------------------------

def test_swarm_config_validation():
    SwarmConfig(constriction_k=0.0)  # zero scale is a legal, frozen swarm
    SwarmConfig(constriction_k=1.0)
    with pytest.raises(ValueError, match="constriction_k"):
        SwarmConfig(constriction_k=1.1)
    with pytest.raises(ValueError, match="constriction_k"):
        SwarmConfig(constriction_k=-0.1)
    with pytest.raises(ValueError, match="population"):
        SwarmConfig(population=1)
    with pytest.raises(ValueError, match="iterations"):
        SwarmConfig(iterations=0)
    with pytest.raises(ValueError, match="positive"):
        SwarmConfig(cognitive=0.0)
    with pytest.raises(ValueError, match="positive"):
        SwarmConfig(social=-1.0)
    with pytest.raises(ValueError, match="velocity_clamp"):
        SwarmConfig(velocity_clamp=0.0)


def test_ga_config_validation():
    GaConfig(crossover_rate=0.0, mutation_rate=1.0)
    with pytest.raises(ValueError, match="crossover_rate"):
        GaConfig(crossover_rate=1.1)
    with pytest.raises(ValueError, match="mutation_rate"):
        GaConfig(mutation_rate=-0.2)
    with pytest.raises(ValueError, match="generations"):
        GaConfig(generations=0)
    with pytest.raises(ValueError, match="elitism"):
        GaConfig(population=10, elitism=10)
    with pytest.raises(ValueError, match="tournament"):
        GaConfig(tournament=0)


# ---------------------------------------------------------------------------
# generic maximizers on the smoke objective
# ---------------------------------------------------------------------------

def test_swarm_reaches_sphere_optimum():
    for seed in (0, 1, 2):
        pos, score, trace, _ = swarm_maximize(sphere, BOX_LO, BOX_HI,
                                              SwarmConfig(seed=seed))
        assert score >= -1e-3
        assert np.allclose(pos, 0.7, atol=0.05)
        assert trace.size == 100
        assert np.all(np.diff(trace) >= 0)


def test_evolve_reaches_sphere_neighbourhood():
    for seed in (0, 1, 2):
        pos, score, trace = evolve_maximize(sphere, BOX_LO, BOX_HI,
                                            GaConfig(seed=seed))
        assert score >= -1e-2
        assert trace.size == 100
        assert np.all(np.diff(trace) >= 0)


def test_swarm_single_iteration_returns_best_of_initial_swarm():
    config = SwarmConfig(population=30, iterations=1, constriction_k=0.5,
                         seed=9)
    pos, score, trace, k = swarm_maximize(sphere, BOX_LO, BOX_HI, config)
    # with a fixed k the generator starts at the position block
    init = np.random.default_rng(9).uniform(BOX_LO, BOX_HI, (30, 4))
    scores = np.array([sphere(row) for row in init])
    assert k == 0.5
    assert trace.size == 1
    assert score == pytest.approx(scores.max(), rel=1e-15)
    assert np.array_equal(pos, init[np.argmax(scores)])


def test_swarm_draws_k_before_positions_when_unset():
    config = SwarmConfig(population=10, iterations=1, seed=42)
    _, _, _, k = swarm_maximize(sphere, BOX_LO, BOX_HI, config)
    want = float(np.random.default_rng(42).uniform(0.0, 1.0))
    assert k == want
    assert 0.0 <= k <= 1.0


def test_swarm_ties_keep_the_first_incumbent():
    config = SwarmConfig(population=12, iterations=3, constriction_k=0.4,
                         seed=5)
    pos, score, trace, _ = swarm_maximize(lambda x: 1.0, BOX_LO, BOX_HI,
                                          config)
    init = np.random.default_rng(5).uniform(BOX_LO, BOX_HI, (12, 4))
    assert score == 1.0
    assert np.all(trace == 1.0)
    assert np.array_equal(pos, init[0])


def test_evolve_without_variation_never_improves():
    """Crossover and mutation switched off leave only copies of existing
    members, so the best is the round-0 best and the trace stays flat."""
    config = GaConfig(population=20, generations=12, crossover_rate=0.0,
                      mutation_rate=0.0, seed=3)
    pos, score, trace = evolve_maximize(sphere, BOX_LO, BOX_HI, config)
    init = np.random.default_rng(3).uniform(BOX_LO, BOX_HI, (20, 4))
    scores = np.array([sphere(row) for row in init])
    assert trace.size == 12
    assert np.all(trace == trace[0])
    assert score == pytest.approx(scores.max(), rel=1e-15)
    assert np.array_equal(pos, init[np.argmax(scores)])


def test_maximizers_reject_bad_boxes():
    with pytest.raises(ValueError, match="bounds"):
        swarm_maximize(sphere, np.zeros(3), np.ones(2), SwarmConfig())
    with pytest.raises(ValueError, match="lower bounds"):
        evolve_maximize(sphere, np.ones(2), np.zeros(2), GaConfig())


# ---------------------------------------------------------------------------
# allocation solves
# ---------------------------------------------------------------------------

SMALL_SWARM = SwarmConfig(population=20, iterations=15, seed=0)
SMALL_GA = GaConfig(population=20, generations=15, seed=0)


def test_swarm_solve_reports_feasible_valid_best():
    spec, bounds = ps_problem()
    res = swarm_solve(spec, bounds, (1.0, 1.0), SMALL_SWARM)
    assert res.algorithm == "swarm"
    assert res.feasible
    assert res.trace.size == 15
    assert np.all(np.diff(res.trace) >= 0)
    assert res.evaluations == 20 * 15
    assert 0.0 <= res.k_used <= 1.0
    cand = res.best_candidate
    assert np.all((cand.r >= spec.r_min) & (cand.r <= spec.r_max))
    assert np.all((cand.n >= spec.n_min) & (cand.n <= spec.n_max))
    # re-derive the metrics independently and re-check every limit
    again = crisp_metrics(spec, Candidate(cand.r, cand.n))
    assert again == res.best_metrics
    assert is_feasible(spec, again)
    assert again.weight <= spec.weight_limit
    assert again.volume <= spec.volume_limit
    assert again.cost <= spec.cost_limit


def test_genetic_solve_reports_feasible_valid_best():
    spec, bounds = ps_problem()
    res = genetic_solve(spec, bounds, (1.0, 1.0), SMALL_GA)
    assert res.algorithm == "genetic"
    assert res.feasible
    assert res.k_used is None
    assert res.trace.size == 15
    assert np.all(np.diff(res.trace) >= 0)
    again = crisp_metrics(spec, res.best_candidate)
    assert is_feasible(spec, again)
    assert again.weight <= spec.weight_limit
    assert again.volume <= spec.volume_limit


def test_solves_are_deterministic_per_seed():
    spec, bounds = ps_problem()
    for solve, config in ((swarm_solve, SMALL_SWARM), (genetic_solve, SMALL_GA)):
        a = solve(spec, bounds, (1.0, 1.0), config)
        b = solve(spec, bounds, (1.0, 1.0), config)
        assert a.best_fitness == b.best_fitness
        assert np.array_equal(a.trace, b.trace)
        assert np.array_equal(a.best_candidate.r, b.best_candidate.r)
        assert np.array_equal(a.best_candidate.n, b.best_candidate.n)
        assert a.best_metrics == b.best_metrics
        assert a.best_objectives == b.best_objectives


def test_solves_differ_across_seeds():
    spec, bounds = ps_problem()
    a = swarm_solve(spec, bounds, (1.0, 1.0), SMALL_SWARM)
    b = swarm_solve(spec, bounds, (1.0, 1.0),
                    SwarmConfig(population=20, iterations=15, seed=1))
    assert not np.array_equal(a.trace, b.trace)


def test_solve_echoes_configuration():
    spec, bounds = ps_problem()
    res = swarm_solve(spec, bounds, (0.8, 0.2), SMALL_SWARM,
                      weight_variant="as-written", fitness_mode="raw",
                      grid_size=101)
    assert res.xi == (0.8, 0.2)
    assert res.weight_variant == "as-written"
    assert res.fitness_mode == "raw"
    assert res.grid_size == 101
    assert res.seed == 0


def test_infeasible_problem_flags_fallback():
    """Limits nothing can satisfy: the run reports the least-violating
    candidate, flagged infeasible, with no fuzzy objective pair."""
    spec = SystemSpec(SERIES_PARALLEL, 1000.0, [1e-5, 1e-5], [1.5, 1.5],
                      [2.0, 3.0], [4.0, 5.0], 1e9, 1.0, 1.0)
    bounds = IdealBounds(0.6, 0.9, 50.0, 400.0)
    for res in (swarm_solve(spec, bounds, (1.0, 1.0), SMALL_SWARM),
                genetic_solve(spec, bounds, (1.0, 1.0), SMALL_GA)):
        assert not res.feasible
        assert res.best_objectives is None
        assert res.best_fitness < 0.0
        assert not is_feasible(spec, res.best_metrics)
        # the fallback still decodes to a structurally valid candidate
        assert np.all((res.best_candidate.n >= spec.n_min)
                      & (res.best_candidate.n <= spec.n_max))
