"""Deterministic adaptive quadrature, used as an independent numerical oracle.

The closed-form normalization constants and the exact samplers are both
cross-checked against direct integration of the defining densities over the
chamber, for one and two particles.  The integrator is a globally adaptive
bisection scheme with an embedded 7/15-point Gauss pair per interval (the
nodes come from ``numpy.polynomial.legendre``); nothing here shares code with
the formulas being checked.
"""

from __future__ import annotations

import heapq
import math
from functools import lru_cache

import numpy as np

from .core import RootKind, RootSystemSpec, _as_kind, homogeneity_degree

__all__ = [
    "adaptive_gauss",
    "ordered_integral_2d",
    "chamber_weight_integral",
    "chamber_moment",
]


@lru_cache(maxsize=None)
def _gauss_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, weights


def _panel(f, a: float, b: float) -> tuple[float, float]:
    """Integral estimate on [a, b] plus an error estimate from a 7/15 pair."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    n15, w15 = _gauss_rule(15)
    n7, w7 = _gauss_rule(7)
    x = mid + half * np.concatenate([n15, n7])
    vals = np.asarray(f(x), dtype=float)
    i15 = half * float(w15 @ vals[:15])
    i7 = half * float(w7 @ vals[15:])
    return i15, abs(i15 - i7)


def adaptive_gauss(
    f,
    a: float,
    b: float,
    *,
    atol: float = 1e-12,
    rtol: float = 1e-10,
    max_panels: int = 4000,
) -> float:
    """Globally adaptive integral of a vectorized integrand on [a, b]."""
    if not b > a:
        raise ValueError("need b > a")
    value, err = _panel(f, a, b)
    heap = [(-err, a, b, value, err)]
    total = value
    total_err = err
    panels = 1
    while total_err > max(atol, rtol * abs(total)) and panels < max_panels:
        _, lo, hi, val, err = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = _panel(f, lo, mid)
        v2, e2 = _panel(f, mid, hi)
        total += v1 + v2 - val
        total_err += e1 + e2 - err
        heapq.heappush(heap, (-e1, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, hi, v2, e2))
        panels += 1
    return total


def ordered_integral_2d(
    f,
    outer_lo: float,
    outer_hi: float,
    inner_lo,
    inner_hi: float,
    *,
    rtol: float = 1e-9,
    atol: float = 1e-12,
) -> float:
    """Integral of f(y1, y2) over {inner_lo(y2) <= y1 <= inner_hi, outer_lo <= y2 <= outer_hi}.

    ``f`` must be vectorized in its first argument; ``inner_lo`` maps the
    outer variable to the lower limit of the inner one (the chamber ordering
    constraint).
    """

    def outer_integrand(y2_vals):
        out = np.empty_like(y2_vals)
        for idx, y2 in enumerate(y2_vals):
            lo = inner_lo(y2)
            if lo >= inner_hi:
                out[idx] = 0.0
                continue
            out[idx] = adaptive_gauss(
                lambda y1: f(y1, y2), lo, inner_hi, atol=atol * 0.1, rtol=rtol * 0.1
            )
        return out

    return adaptive_gauss(outer_integrand, outer_lo, outer_hi, atol=atol, rtol=rtol)


def _truncation_radius(spec: RootSystemSpec) -> float:
    gamma = homogeneity_degree(spec)
    return math.sqrt(4.0 * gamma + 2.0 * spec.n) + 10.0


def _weight_factor(spec: RootSystemSpec, y1, y2):
    """w_k(y1, y2) for two particles (vectorized in y1)."""
    if spec.kind is RootKind.A:
        return (y1 - y2) ** (2.0 * spec.k) if spec.k > 0 else np.ones_like(y1)
    if spec.kind is RootKind.B:
        w = np.ones_like(y1)
        if spec.k2 > 0:
            w = w * (y1**2 - y2**2) ** (2.0 * spec.k2)
        if spec.k1 > 0:
            w = w * (y1 * y2) ** (2.0 * spec.k1)
        return w
    return (y1**2 - y2**2) ** (2.0 * spec.k) if spec.k > 0 else np.ones_like(y1)


def chamber_weight_integral(spec: RootSystemSpec, *, rtol: float = 1e-9) -> float:
    """Direct quadrature of the defining integral int_chamber exp(-|y|^2/2) w_k(y) dy.

    Supports one and two particles; the reciprocal is the closed-form
    normalization constant this value is used to cross-check.
    """
    radius = _truncation_radius(spec)
    if spec.n == 1:
        if spec.kind is RootKind.A or spec.kind is RootKind.D:
            # the one-particle chamber is the whole line, weight 1
            return adaptive_gauss(lambda y: np.exp(-0.5 * y**2), -radius, radius, rtol=rtol)
        k1 = spec.k1

        def integrand(y):
            w = y ** (2.0 * k1) if k1 > 0 else np.ones_like(y)
            return np.exp(-0.5 * y**2) * w

        return adaptive_gauss(integrand, 0.0, radius, rtol=rtol)
    if spec.n != 2:
        raise ValueError("the quadrature oracle covers n in {1, 2}")

    def density(y1, y2):
        return np.exp(-0.5 * (y1**2 + y2**2)) * _weight_factor(spec, y1, y2)

    if spec.kind is RootKind.A:
        return ordered_integral_2d(density, -radius, radius, lambda y2: y2, radius, rtol=rtol)
    if spec.kind is RootKind.B:
        return ordered_integral_2d(density, 0.0, radius, lambda y2: y2, radius, rtol=rtol)
    return ordered_integral_2d(density, -radius, radius, lambda y2: abs(y2), radius, rtol=rtol)


def chamber_moment(spec: RootSystemSpec, t: float, g, *, rtol: float = 1e-8) -> float:
    """E[g(y)] under the start-0 density at time t, by quadrature (n <= 2).

    ``g`` takes (y1, y2) for two particles (vectorized in y1) or y for one.
    Used to calibrate the exact samplers' scaling conventions.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    radius = _truncation_radius(spec) * math.sqrt(max(t, 1.0))
    if spec.n == 1:
        if spec.kind is RootKind.B:
            lo = 0.0
            k1 = spec.k1

            def rho(y):
                w = y ** (2.0 * k1) if k1 > 0 else np.ones_like(y)
                return np.exp(-0.5 * y**2 / t) * w

        else:
            lo = -radius

            def rho(y):
                return np.exp(-0.5 * y**2 / t)

        num = adaptive_gauss(lambda y: np.asarray(g(y), float) * rho(y), lo, radius, rtol=rtol)
        den = adaptive_gauss(rho, lo, radius, rtol=rtol)
        return num / den
    if spec.n != 2:
        raise ValueError("the quadrature oracle covers n in {1, 2}")

    def rho2(y1, y2):
        return np.exp(-0.5 * (y1**2 + y2**2) / t) * _weight_factor(spec, y1, y2)

    if spec.kind is RootKind.A:
        outer_lo, inner_lo = -radius, (lambda y2: y2)
    elif spec.kind is RootKind.B:
        outer_lo, inner_lo = 0.0, (lambda y2: y2)
    else:
        outer_lo, inner_lo = -radius, (lambda y2: abs(y2))
    num = ordered_integral_2d(
        lambda y1, y2: np.asarray(g(y1, y2), float) * rho2(y1, y2),
        outer_lo, radius, inner_lo, radius, rtol=rtol,
    )
    den = ordered_integral_2d(rho2, outer_lo, radius, inner_lo, radius, rtol=rtol)
    return num / den
