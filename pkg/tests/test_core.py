import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freeze_bessel import (
    ChamberPoint,
    RootKind,
    RootSystemSpec,
    freezing_potential,
    homogeneity_degree,
    in_chamber,
    log_weight,
    log_weight_batch,
    project_batch,
    project_to_chamber,
)


def test_spec_constructors_and_accessors():
    a = RootSystemSpec.a(3, 2.0)
    assert a.kind is RootKind.A and a.n == 3 and a.k == 2.0
    b = RootSystemSpec.b(2, 1.0, 4.0)
    assert b.k1 == 1.0 and b.k2 == 4.0
    d = RootSystemSpec.d(2, 0.5)
    assert d.k == 0.5
    with pytest.raises(AttributeError):
        b.k
    with pytest.raises(AttributeError):
        a.k1


def test_spec_validation():
    with pytest.raises(ValueError):
        RootSystemSpec.a(0, 1.0)
    with pytest.raises(ValueError):
        RootSystemSpec.d(1, 1.0)
    with pytest.raises(ValueError):
        RootSystemSpec(RootKind.B, 2, 1.0)
    with pytest.raises(ValueError):
        RootSystemSpec(RootKind.A, 2, (1.0, 2.0))
    with pytest.raises(ValueError):
        RootSystemSpec.a(2, -1.0)
    with pytest.raises(ValueError):
        RootSystemSpec.b(2, math.inf, 1.0)


def test_spec_dict_roundtrip():
    for spec in (RootSystemSpec.a(4, 1.5), RootSystemSpec.b(2, 0.5, 3.0), RootSystemSpec.d(3, 2.0)):
        assert RootSystemSpec.from_dict(spec.to_dict()) == spec


def test_in_chamber_by_kind():
    assert in_chamber(RootKind.A, np.array([2.0, 0.0, -1.0]))
    assert not in_chamber(RootKind.A, np.array([0.0, 1.0]))
    assert in_chamber(RootKind.B, np.array([2.0, 0.5]))
    assert not in_chamber(RootKind.B, np.array([2.0, -0.5]))
    # kind D allows a negative last coordinate as long as it is smallest in size
    assert in_chamber(RootKind.D, np.array([2.0, -0.5]))
    assert not in_chamber(RootKind.D, np.array([0.5, -2.0]))
    flags = in_chamber(RootKind.A, np.array([[1.0, 0.0], [0.0, 1.0]]))
    assert flags.tolist() == [True, False]


def test_project_batch_matches_kind_rules():
    x = np.array([-1.0, 2.0, 0.5])
    assert np.array_equal(project_batch(RootKind.A, x), np.array([2.0, 0.5, -1.0]))
    assert np.array_equal(project_batch(RootKind.B, x), np.array([2.0, 1.0, 0.5]))
    # one negative coordinate: kind D keeps the odd sign parity on the last slot
    assert np.array_equal(project_batch(RootKind.D, x), np.array([2.0, 1.0, -0.5]))
    assert np.array_equal(project_batch(RootKind.D, np.array([-1.0, -2.0])), np.array([2.0, 1.0]))


@settings(max_examples=200)
@given(
    st.sampled_from(list(RootKind)),
    st.lists(st.floats(-50, 50), min_size=1, max_size=6),
)
def test_projection_idempotent_and_lands_in_chamber(kind, values):
    if kind is RootKind.D and len(values) < 2:
        values = values + [0.0]
    x = np.asarray(values)
    p = project_batch(kind, x)
    assert in_chamber(kind, p)
    assert np.array_equal(project_batch(kind, p), p)
    # projection only permutes and flips signs, sizes are preserved
    assert np.allclose(np.sort(np.abs(p)), np.sort(np.abs(x)))


def test_projection_fixes_chamber_points():
    pts = {
        RootKind.A: np.array([1.0, 0.0, -2.0]),
        RootKind.B: np.array([3.0, 1.0]),
        RootKind.D: np.array([3.0, -1.0]),
    }
    for kind, x in pts.items():
        assert np.array_equal(project_batch(kind, x), x)


def test_chamber_point_validation():
    p = ChamberPoint(RootKind.A, [1.0, -1.0])
    assert p.n == 2
    with pytest.raises(ValueError):
        p.coords[0] = 5.0
    with pytest.raises(ValueError):
        ChamberPoint(RootKind.A, [0.0, 1.0])
    with pytest.raises(ValueError):
        ChamberPoint(RootKind.B, [1.0, np.nan])
    assert project_to_chamber(RootKind.B, [-3.0, 1.0]).coords.tolist() == [3.0, 1.0]


def test_log_weight_closed_forms():
    spec = RootSystemSpec.a(2, 1.5)
    y = np.array([2.0, -1.0])
    assert log_weight(spec, y) == pytest.approx(2 * 1.5 * math.log(3.0), rel=1e-14)

    spec_b = RootSystemSpec.b(1, 0.7, 5.0)
    assert log_weight(spec_b, np.array([2.0])) == pytest.approx(2 * 0.7 * math.log(2.0), rel=1e-14)

    spec_d = RootSystemSpec.d(2, 2.0)
    y = np.array([3.0, 1.0])
    expect = 2 * 2.0 * (math.log(2.0) + math.log(4.0))
    assert log_weight(spec_d, y) == pytest.approx(expect, rel=1e-14)


def test_log_weight_wall_is_minus_infinity():
    spec = RootSystemSpec.a(2, 1.0)
    assert log_weight(spec, np.array([1.0, 1.0])) == -math.inf
    spec_b = RootSystemSpec.b(2, 1.0, 1.0)
    assert log_weight(spec_b, np.array([1.0, 0.0])) == -math.inf
    # zero multiplicity kills the corresponding factor, the wall is no longer singular
    spec_b0 = RootSystemSpec.b(2, 0.0, 1.0)
    assert np.isfinite(log_weight(spec_b0, np.array([1.0, 0.0])))


@settings(max_examples=100)
@given(st.integers(0, 2 ** 32 - 1))
def test_log_weight_batch_matches_scalar(seed):
    rng = np.random.default_rng(seed)
    spec = RootSystemSpec.b(3, 0.8, 1.7)
    pts = project_batch(spec.kind, rng.normal(size=(5, 3)) * 3)
    batch = log_weight_batch(spec, pts)
    single = [log_weight(spec, p) for p in pts]
    assert np.allclose(batch, single, rtol=1e-13, atol=1e-13)


def test_homogeneity_degree_values():
    assert homogeneity_degree(RootSystemSpec.a(4, 1.5)) == pytest.approx(1.5 * 4 * 3 / 2)
    assert homogeneity_degree(RootSystemSpec.b(3, 0.5, 2.0)) == pytest.approx(3 * (0.5 + 2.0 * 2))
    assert homogeneity_degree(RootSystemSpec.d(3, 2.0)) == pytest.approx(2.0 * 3 * 2)


@settings(max_examples=50)
@given(st.floats(0.1, 10.0))
def test_weight_is_homogeneous(c):
    spec = RootSystemSpec.a(3, 2.0)
    y = np.array([2.0, 0.3, -1.1])
    lhs = log_weight(spec, c * y)
    rhs = 2 * homogeneity_degree(spec) * math.log(c) + log_weight(spec, y)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-10)


def test_freezing_potential_known_values():
    assert freezing_potential(RootSystemSpec.a(2, 1.0), np.array([1.0, -1.0])) == pytest.approx(
        2 * math.log(2.0) - 1.0, rel=1e-14
    )
    assert freezing_potential(RootSystemSpec.d(2, 1.0), np.array([2.0, 0.0])) == pytest.approx(
        2 * math.log(4.0) - 2.0, rel=1e-14
    )
    assert freezing_potential(
        RootSystemSpec.b(1, 1.0, 1.0), np.array([math.sqrt(2.0)]), nu=1.0
    ) == pytest.approx(math.log(2.0) - 1.0, rel=1e-14)


def test_freezing_potential_maximized_at_target():
    from freeze_bessel import freezing_target

    # under this normalization the kind-A maximizer sits at sqrt(2) times the
    # Hermite-zero vector; kinds B and D peak at the target itself
    cases = [
        (RootSystemSpec.a(3, 1.0), math.sqrt(2.0) * freezing_target("A", 3).coords, {}),
        (RootSystemSpec.b(2, 2.0, 2.0), freezing_target("B", 2, nu=1.0).coords, {"nu": 1.0}),
        (RootSystemSpec.d(2, 1.0), freezing_target("D", 2).coords, {}),
    ]
    rng = np.random.default_rng(0)
    for spec, argmax, kw in cases:
        v0 = freezing_potential(spec, argmax, **kw)
        for _ in range(25):
            y = project_batch(spec.kind, argmax + 0.3 * rng.standard_normal(spec.n))
            assert freezing_potential(spec, y, **kw) <= v0 + 1e-12


def test_a_potential_concave_on_segments():
    spec = RootSystemSpec.a(3, 1.0)
    rng = np.random.default_rng(1)
    for _ in range(40):
        a = project_batch(RootKind.A, rng.uniform(-3, 3, size=3))
        b = project_batch(RootKind.A, rng.uniform(-3, 3, size=3))
        a, b = a + np.array([0.2, 0.0, -0.2]), b + np.array([0.2, 0.0, -0.2])
        mid = freezing_potential(spec, 0.5 * (a + b))
        avg = 0.5 * (freezing_potential(spec, a) + freezing_potential(spec, b))
        assert mid >= avg - 1e-12


def test_freezing_potential_nu_defaults_to_multiplicity_ratio():
    spec = RootSystemSpec.b(2, 3.0, 2.0)
    y = np.array([2.5, 1.0])
    assert freezing_potential(spec, y) == pytest.approx(freezing_potential(spec, y, nu=1.5))
    with pytest.raises(ValueError):
        freezing_potential(RootSystemSpec.b(2, 1.0, 0.0), y)
    assert freezing_potential(spec, np.array([1.0, 1.0])) == -math.inf
