import math

import numpy as np
import pytest
from scipy import stats as ss

from freeze_bessel.core import ChamberPoint, RootSystemSpec, in_chamber
from freeze_bessel.sde import (
    BUDGET_ENV_VAR,
    BudgetExceeded,
    SdeConfig,
    StartDistribution,
    drift,
    drift_batch,
    simulate_endpoints,
    translation_invariance_check,
)


def test_drift_closed_forms():
    spec_a = RootSystemSpec.a(3, 2.0)
    x = np.array([3.0, 1.0, 0.0])
    want = 2.0 * np.array([1.0 / 2 + 1.0 / 3, -1.0 / 2 + 1.0, -1.0 / 3 - 1.0])
    assert np.allclose(drift(spec_a, x), want, atol=1e-14)

    spec_b = RootSystemSpec.b(2, 1.5, 0.5)
    y = np.array([2.0, 1.0])
    pair = np.array([1.0 / 1 + 1.0 / 3, -1.0 / 1 + 1.0 / 3])
    axis = np.array([1.5 / 2.0, 1.5 / 1.0])
    assert np.allclose(drift(spec_b, y), 0.5 * pair + axis, atol=1e-14)

    spec_d = RootSystemSpec.d(2, 0.5)
    assert np.allclose(drift(spec_d, y), 0.5 * pair, atol=1e-14)

    # k = 0 freezes the interaction off entirely
    assert np.array_equal(drift(RootSystemSpec.a(3, 0.0), x), np.zeros(3))


def test_drift_wall_behavior():
    spec = RootSystemSpec.a(2, 1.0)
    wall = np.array([[1.0, 1.0]])
    out = drift_batch(spec, wall)
    assert np.isinf(out).any()
    with pytest.raises(ValueError, match="wall"):
        drift(spec, np.array([1.0, 1.0]))
    with pytest.raises(ValueError, match="wall"):
        drift(RootSystemSpec.b(1, 1.0, 1.0), np.array([0.0]))


def test_drift_accepts_chamber_point():
    spec = RootSystemSpec.a(2, 1.0)
    pt = ChamberPoint(spec.kind, np.array([1.0, -1.0]))
    assert np.allclose(drift(spec, pt), np.array([0.5, -0.5]), atol=1e-15)


def test_start_distribution_draws():
    spec = RootSystemSpec.a(2, 1.0)
    rng = np.random.default_rng(0)
    point = StartDistribution.at_point([1.0, -1.0])
    pts = point.draw(spec, rng, 5)
    assert np.array_equal(pts, np.tile([1.0, -1.0], (5, 1)))

    box = StartDistribution.uniform([0.9, -1.1], [1.1, -0.9])
    draws = box.draw(spec, rng, 4000)
    assert draws.shape == (4000, 2)
    assert (draws[:, 0] >= 0.9).all() and (draws[:, 0] <= 1.1).all()
    assert (draws[:, 1] >= -1.1).all() and (draws[:, 1] <= -0.9).all()
    assert in_chamber(spec.kind, draws).all()

    mix = StartDistribution.mixture(np.array([[1.0, -1.0], [2.0, -2.0]]), [0.25, 0.75])
    md = mix.draw(spec, rng, 8000)
    frac = float(np.mean(md[:, 0] == 2.0))
    assert frac == pytest.approx(0.75, abs=0.03)


def test_config_validation():
    spec = RootSystemSpec.b(2, 1.0, 1.0)
    good = StartDistribution.at_point([1.0, 0.5])
    with pytest.raises(ValueError, match="origin"):
        SdeConfig(spec=RootSystemSpec.a(2, 1.0), x0=StartDistribution.at_point([0.0, 0.0]), t=1.0, seed=0)
    with pytest.raises(ValueError, match="chamber"):
        SdeConfig(spec=spec, x0=StartDistribution.at_point([0.5, 1.0]), t=1.0, seed=0)
    with pytest.raises(ValueError, match="strictly inside"):
        SdeConfig(spec=spec, x0=StartDistribution.at_point([1.0, 0.0]), t=1.0, seed=0)
    with pytest.raises(ValueError):
        SdeConfig(spec=spec, x0=good, t=-1.0, seed=0)
    with pytest.raises(ValueError):
        SdeConfig(spec=spec, x0=good, t=1.0, seed=0, mesh_power=0.5)
    # raw arrays are promoted to point distributions
    cfg = SdeConfig(spec=spec, x0=[1.0, 0.5], t=1.0, seed=0)
    assert isinstance(cfg.x0, StartDistribution)
    assert cfg.resolved_steps == 2000


def test_budget_enforcement():
    spec = RootSystemSpec.a(2, 1.0)
    cfg = SdeConfig(
        spec=spec, x0=[1.0, -1.0], t=1.0, seed=0, steps=100, paths=100, budget=5000
    )
    with pytest.raises(BudgetExceeded, match=BUDGET_ENV_VAR):
        simulate_endpoints(cfg)


def test_budget_env_variable(monkeypatch):
    from freeze_bessel.sde import path_step_budget

    monkeypatch.setenv(BUDGET_ENV_VAR, "1234")
    assert path_step_budget() == 1234
    monkeypatch.delenv(BUDGET_ENV_VAR)
    assert path_step_budget() == 200_000_000


def test_free_particle_matches_brownian_motion():
    # k = 0, n = 1: the path is plain Brownian motion started at x0
    spec = RootSystemSpec.a(1, 0.0)
    x0, t = 0.3, 1.7
    cfg = SdeConfig(spec=spec, x0=[x0], t=t, seed=5, steps=400, paths=30000)
    batch = simulate_endpoints(cfg)
    p = ss.kstest(batch.points[:, 0], "norm", args=(x0, math.sqrt(t))).pvalue
    assert p > 0.01


def test_two_free_particles_match_sorted_brownian_pair():
    # k = 0, n = 2: endpoints are two independent BMs kept in sorted order
    spec = RootSystemSpec.a(2, 0.0)
    x0 = np.array([0.5, -0.5])
    t = 1.0
    cfg = SdeConfig(spec=spec, x0=x0, t=t, seed=6, steps=800, paths=20000)
    batch = simulate_endpoints(cfg)
    ref_rng = np.random.default_rng(123)
    ref = np.sort(x0 + math.sqrt(t) * ref_rng.standard_normal((20000, 2)), axis=1)[:, ::-1]
    for j in range(2):
        p = ss.ks_2samp(batch.points[:, j], ref[:, j]).pvalue
        assert p > 0.01


def test_simulation_is_deterministic_and_thread_stable():
    spec = RootSystemSpec.b(2, 1.0, 1.0)
    cfg = SdeConfig(spec=spec, x0=[1.0, 0.5], t=0.5, seed=3, steps=50, paths=6000)
    b1 = simulate_endpoints(cfg)
    b2 = simulate_endpoints(cfg)
    assert np.array_equal(b1.points, b2.points)
    from dataclasses import replace

    b4 = simulate_endpoints(replace(cfg, threads=4))
    assert np.array_equal(b1.points, b4.points)
    assert in_chamber(spec.kind, b1.points).all()
    assert b1.diagnostics.extra["dropped_paths"] == 0


def test_step_halving_is_consistent():
    # a mild configuration: halving the step should not move the endpoint law
    spec = RootSystemSpec.a(2, 1.0)
    base = dict(spec=spec, x0=np.array([1.0, -1.0]), t=0.5, seed=9, paths=12000)
    coarse = simulate_endpoints(SdeConfig(steps=250, **base))
    fine = simulate_endpoints(SdeConfig(steps=500, **base))
    for j in range(2):
        p = ss.ks_2samp(coarse.points[:, j], fine.points[:, j]).pvalue
        assert p > 0.01


def test_translation_invariance_report():
    report = translation_invariance_check(3, 10.0, 1.0, -2.0, [2.0, 0.0, -2.0], seed=42)
    assert report.passed
    assert report.statistics["p_value"] > 0.01
    assert report.seed == 42
    # c = 0 short-circuits to exact equality of the two endpoint batches
    same = translation_invariance_check(2, 1.0, 0.5, 0.0, [1.0, -1.0], paths=500, steps=50, seed=1)
    assert same.passed
    assert same.statistics["identical"] is True
