import math

import numpy as np
import pytest

from freeze_bessel import (
    RootSystemSpec,
    adaptive_gauss,
    chamber_moment,
    chamber_weight_integral,
    homogeneity_degree,
    log_norm_constant,
)


def test_adaptive_gauss_polynomials_exact():
    assert adaptive_gauss(lambda x: x ** 2, 0.0, 1.0) == pytest.approx(1 / 3, rel=1e-12)
    assert adaptive_gauss(lambda x: x ** 7 - x, -1.0, 2.0) == pytest.approx(
        (2.0 ** 8 - 1.0) / 8 - (2.0 ** 2 - 1.0) / 2, rel=1e-12
    )


def test_adaptive_gauss_transcendental():
    assert adaptive_gauss(np.exp, 0.0, 3.0) == pytest.approx(math.exp(3) - 1, rel=1e-11)
    assert adaptive_gauss(lambda x: np.exp(-0.5 * x ** 2), -8.0, 8.0) == pytest.approx(
        math.sqrt(2 * math.pi), rel=1e-11
    )


def test_adaptive_gauss_integrable_singularity():
    assert adaptive_gauss(lambda x: 1 / np.sqrt(x), 1e-12, 1.0, rtol=1e-8) == pytest.approx(
        2.0, rel=1e-5
    )


def _norm_from_quadrature(spec):
    return 1.0 / chamber_weight_integral(spec)


def test_norm_constants_match_quadrature_a():
    for n, k in ((1, 0.5), (1, 2.0), (2, 0.5), (2, 1.0), (2, 2.5)):
        spec = RootSystemSpec.a(n, k)
        family = log_norm_constant("cA", n=n, k=k)
        assert family.value == pytest.approx(_norm_from_quadrature(spec), rel=1e-8)


def test_norm_constants_match_quadrature_b():
    for n, k1, k2 in ((1, 0.5, 1.0), (1, 2.5, 0.5), (2, 0.5, 0.5), (2, 1.0, 1.0)):
        spec = RootSystemSpec.b(n, k1, k2)
        family = log_norm_constant("cB", n=n, k1=k1, k2=k2)
        assert family.value == pytest.approx(_norm_from_quadrature(spec), rel=1e-8)


def test_norm_constants_match_quadrature_d():
    for k in (0.5, 1.0, 2.5):
        spec = RootSystemSpec.d(2, k)
        family = log_norm_constant("cD", n=2, k=k)
        assert family.value == pytest.approx(_norm_from_quadrature(spec), rel=1e-8)


def test_chamber_moment_symmetry_and_energy():
    # stationary second moment: E|y|^2 = t (N + 2 gamma) with gamma the
    # homogeneity degree of the weight
    for spec in (RootSystemSpec.a(2, 1.0), RootSystemSpec.b(2, 1.0, 1.0), RootSystemSpec.d(2, 0.5)):
        gamma = homogeneity_degree(spec)
        for t in (0.5, 1.0):
            got = chamber_moment(spec, t, lambda y1, y2: y1 ** 2 + y2 ** 2)
            assert got == pytest.approx(t * (2 + 2 * gamma), rel=1e-7), spec


def test_chamber_moment_a_mean_is_zero():
    spec = RootSystemSpec.a(2, 1.5)
    assert chamber_moment(spec, 1.0, lambda y1, y2: y1 + y2) == pytest.approx(0.0, abs=1e-9)


def test_chamber_moment_t_scaling():
    spec = RootSystemSpec.b(2, 1.0, 0.5)
    m1 = chamber_moment(spec, 1.0, lambda y1, y2: y1)
    m4 = chamber_moment(spec, 4.0, lambda y1, y2: y1)
    assert m4 == pytest.approx(2.0 * m1, rel=1e-7)
