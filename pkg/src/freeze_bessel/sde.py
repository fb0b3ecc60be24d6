"""Path simulation of the interacting particle SDEs.

The generator is (1/2) Laplacian plus the singular drift of the root system:

* kind A: b_i(x) = k * sum_{j != i} 1/(x_i - x_j)
* kind B: b_i(x) = k2 * sum_{j != i} [1/(x_i-x_j) + 1/(x_i+x_j)] + k1/x_i
* kind D: the B drift without the axis term

Each step is a Heun (predictor-corrector) update on the drift with plain
Euler-Maruyama treatment of the additive noise: predict with the entry
drift, re-evaluate at the predicted point, advance with the average.  After
every step the state is projected back to the chamber through the
reflection map, which is how the scheme respects the normal-reflecting
boundary.  The drift is clipped at c_clip/sqrt(h) per coordinate so
near-wall excursions cannot blow a step up.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace

import numpy as np

from .core import (
    ChamberPoint,
    RootKind,
    RootSystemSpec,
    in_chamber,
    project_batch,
)
from .report import VerificationReport
from .sampling import BatchDiagnostics, SampleBatch, SampleMethod, SamplerAbort
from .stat_tests import ks_test_two_sample

__all__ = [
    "BUDGET_ENV_VAR",
    "BudgetExceeded",
    "StartDistribution",
    "SdeConfig",
    "drift",
    "drift_batch",
    "simulate_endpoints",
    "translation_invariance_check",
]

BUDGET_ENV_VAR = "FREEZE_BESSEL_BUDGET"
_DEFAULT_BUDGET = 200_000_000
_DEFAULT_STEPS_PER_UNIT_TIME = 2000
_DEFAULT_PATHS = 20_000
_DRIFT_CLIP = 10.0


class BudgetExceeded(RuntimeError):
    """steps * paths exceeded the configured work budget (exit code 3)."""


def path_step_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return _DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV_VAR} must be positive")
    return value


# ---------------------------------------------------------------------------
# starting points


@dataclass(frozen=True)
class StartDistribution:
    """Initial law of the particles: a point, a box, or a point mixture.

    The support must sit strictly inside the chamber; the uniform variant
    draws from a box intersected with the chamber by rejection.
    """

    kind: str  # "point" | "uniform" | "mixture"
    point: np.ndarray | None = None
    lo: np.ndarray | None = None
    hi: np.ndarray | None = None
    points: np.ndarray | None = None
    weights: np.ndarray | None = None

    @classmethod
    def at_point(cls, x) -> "StartDistribution":
        return cls(kind="point", point=np.asarray(x, dtype=float))

    @classmethod
    def uniform(cls, lo, hi) -> "StartDistribution":
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        if lo.shape != hi.shape or np.any(lo >= hi):
            raise ValueError("need lo < hi componentwise")
        return cls(kind="uniform", lo=lo, hi=hi)

    @classmethod
    def mixture(cls, points, weights) -> "StartDistribution":
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        w = np.asarray(weights, dtype=float)
        if w.size != pts.shape[0] or np.any(w < 0) or w.sum() <= 0:
            raise ValueError("weights must be nonnegative, one per point, not all zero")
        return cls(kind="mixture", points=pts, weights=w / w.sum())

    def draw(self, spec: RootSystemSpec, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.kind == "point":
            x = _validate_start(spec, self.point)
            return np.tile(x, (size, 1))
        if self.kind == "mixture":
            for row in self.points:
                _validate_start(spec, row)
            idx = rng.choice(self.points.shape[0], size=size, p=self.weights)
            return self.points[idx]
        # uniform on box intersected with the chamber interior, by rejection
        out = np.empty((size, spec.n))
        filled = 0
        attempts = 0
        while filled < size:
            attempts += 1
            if attempts > 1000:
                raise ValueError("uniform start box has negligible overlap with the chamber interior")
            block = rng.uniform(self.lo, self.hi, size=(max(size, 1024), spec.n))
            good = block[_strictly_interior_mask(spec, block)]
            take = min(size - filled, good.shape[0])
            out[filled : filled + take] = good[:take]
            filled += take
        return out


def _strictly_interior_mask(spec: RootSystemSpec, pts: np.ndarray) -> np.ndarray:
    x = np.asarray(pts, dtype=float)
    n = spec.n
    if spec.kind is RootKind.A:
        if n == 1:
            return np.ones(x.shape[0], dtype=bool)
        return np.all(x[:, :-1] > x[:, 1:], axis=1)
    if spec.kind is RootKind.B:
        ok = x[:, -1] > 0
        if n > 1:
            ok &= np.all(x[:, :-1] > x[:, 1:], axis=1)
        return ok
    ok = x[:, -2] > np.abs(x[:, -1])
    if n > 2:
        ok &= np.all(x[:, :-2] > x[:, 1:-1], axis=1)
    return ok


def _validate_start(spec: RootSystemSpec, x0) -> np.ndarray:
    x = np.asarray(x0.coords if isinstance(x0, ChamberPoint) else x0, dtype=float)
    if x.shape != (spec.n,):
        raise ValueError(f"start must have {spec.n} coordinates")
    if not np.all(np.isfinite(x)):
        raise ValueError("start must be finite")
    if np.all(x == 0.0):
        raise ValueError("start at the origin is refused: use an exact start-0 sampler instead")
    if not in_chamber(spec.kind, x):
        raise ValueError("start must lie in the chamber (project it first)")
    if not _strictly_interior_mask(spec, x[None, :])[0]:
        raise ValueError("start must be strictly inside the chamber (no wall contact)")
    return x


# ---------------------------------------------------------------------------
# drift


def drift_batch(spec: RootSystemSpec, pts: np.ndarray) -> np.ndarray:
    """Drift field, vectorized over rows; wall contact produces +-inf entries."""
    x = np.asarray(pts, dtype=float)
    n = spec.n
    with np.errstate(divide="ignore", invalid="ignore"):
        if spec.kind is RootKind.A:
            if n == 1 or spec.k == 0:
                return np.zeros_like(x)
            diff = x[..., :, None] - x[..., None, :]
            eye = np.eye(n, dtype=bool)
            inv = np.where(eye, 0.0, 1.0 / diff)
            return spec.k * np.sum(inv, axis=-1)
        kpair = spec.k2 if spec.kind is RootKind.B else spec.k
        out = np.zeros_like(x)
        if kpair > 0 and n > 1:
            diff = x[..., :, None] - x[..., None, :]
            plus = x[..., :, None] + x[..., None, :]
            eye = np.eye(n, dtype=bool)
            inv = np.where(eye, 0.0, 1.0 / diff) + np.where(eye, 0.0, 1.0 / plus)
            out = kpair * np.sum(inv, axis=-1)
        if spec.kind is RootKind.B and spec.k1 > 0:
            out = out + spec.k1 / x
        return out


def drift(spec: RootSystemSpec, x) -> np.ndarray:
    """Drift at one strictly interior point; raises on wall contact."""
    x = np.asarray(x.coords if isinstance(x, ChamberPoint) else x, dtype=float)
    if x.shape != (spec.n,):
        raise ValueError(f"expected {spec.n} coordinates")
    out = drift_batch(spec, x[None, :])[0]
    if not np.all(np.isfinite(out)):
        raise ValueError("drift is singular: the point touches a chamber wall")
    return out


# ---------------------------------------------------------------------------
# simulation


@dataclass(frozen=True)
class SdeConfig:
    """Euler-Maruyama run configuration.

    ``steps`` defaults to 2000 per unit of time; ``budget`` caps
    steps * paths and defaults to the FREEZE_BESSEL_BUDGET environment
    variable (or 2e8 when unset).
    """

    spec: RootSystemSpec
    x0: StartDistribution
    t: float
    seed: int
    steps: int | None = None
    paths: int = _DEFAULT_PATHS
    drift_clip: float = _DRIFT_CLIP
    mesh_power: float = 1.0
    budget: int | None = None
    threads: int | None = None

    def __post_init__(self):
        if self.t <= 0:
            raise ValueError("t must be positive")
        if self.paths < 1:
            raise ValueError("paths must be >= 1")
        if self.steps is not None and self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.mesh_power < 1.0:
            raise ValueError("mesh_power must be >= 1")
        x0 = self.x0
        if not isinstance(x0, StartDistribution):
            x0 = StartDistribution.at_point(
                x0.coords if isinstance(x0, ChamberPoint) else np.asarray(x0, dtype=float)
            )
        object.__setattr__(self, "x0", x0)
        if x0.kind == "point":
            _validate_start(self.spec, x0.point)

    @property
    def resolved_steps(self) -> int:
        if self.steps is not None:
            return int(self.steps)
        return max(1, math.ceil(_DEFAULT_STEPS_PER_UNIT_TIME * self.t))

    @property
    def resolved_budget(self) -> int:
        return int(self.budget) if self.budget is not None else path_step_budget()

    def with_start(self, x0) -> "SdeConfig":
        return replace(self, x0=x0)


def _mesh(t: float, steps: int, power: float) -> np.ndarray:
    """Step sizes of a power-graded mesh on [0, t].

    Grid points t*(j/steps)**power concentrate resolution near time zero,
    where the repulsive drift is largest when the start point sits deep in
    the chamber interior relative to the equilibrium scale.  power=1 gives
    the uniform mesh.
    """
    grid = t * (np.arange(steps + 1) / steps) ** power
    return np.diff(grid)


def _simulate_block(cfg: SdeConfig, child, size: int) -> np.ndarray:
    rng = np.random.default_rng(child)
    spec = cfg.spec
    steps = cfg.resolved_steps
    h_all = _mesh(cfg.t, steps, cfg.mesh_power)
    x = cfg.x0.draw(spec, rng, size)
    for h in h_all:
        clip = cfg.drift_clip / math.sqrt(h)
        sqrt_h = math.sqrt(h)
        noise = sqrt_h * rng.standard_normal(x.shape)
        # Heun step on the drift: plain Euler systematically overshoots a
        # convex decaying repulsion (it holds the entry drift for the whole
        # step), which leaves an outward O(h) mean bias at strong coupling.
        # Averaging entry and predicted-exit drifts removes that term while
        # the noise enters additively and needs no correction.
        b0 = np.clip(drift_batch(spec, x), -clip, clip)
        xp = project_batch(spec.kind, x + b0 * h + noise)
        b1 = np.clip(drift_batch(spec, xp), -clip, clip)
        x = x + 0.5 * (b0 + b1) * h + noise
        x = project_batch(spec.kind, x)
    return x


def simulate_endpoints(cfg: SdeConfig) -> SampleBatch:
    """Simulate independent paths and return their time-t endpoints as a batch.

    Paths producing NaN (numerically exploded) are dropped and counted in the
    batch diagnostics; the run aborts if every path explodes.
    """
    steps = cfg.resolved_steps
    if steps * cfg.paths > cfg.resolved_budget:
        raise BudgetExceeded(
            f"steps*paths = {steps * cfg.paths} exceeds budget {cfg.resolved_budget} "
            f"(raise {BUDGET_ENV_VAR} or lower the workload)"
        )
    from .sampling import _map_subbatches  # shared deterministic sub-batch machinery

    pts = _map_subbatches(lambda child, size: _simulate_block(cfg, child, size), cfg.seed, cfg.paths, cfg.threads)
    bad = ~np.all(np.isfinite(pts), axis=1)
    dropped = int(np.count_nonzero(bad))
    if dropped == cfg.paths:
        raise SamplerAbort("all SDE paths produced NaN; reduce the step size")
    if dropped:
        pts = pts[~bad]
    diag = BatchDiagnostics(
        acceptance_rate=None,
        ess=float(pts.shape[0]),
        thin=1,
        extra={"steps": steps, "dropped_paths": dropped},
    )
    return SampleBatch(cfg.spec, float(cfg.t), SampleMethod.EULER_MARUYAMA, int(cfg.seed), pts, diag)


def translation_invariance_check(
    n: int,
    k: float,
    t: float,
    c: float,
    x0,
    *,
    paths: int = 4000,
    steps: int | None = None,
    seed: int = 0,
    threads: int | None = None,
    p_threshold: float = 0.01,
) -> VerificationReport:
    """A-type diagonal-shift invariance: endpoints from x0 + c*1, shifted back,
    must match endpoints from x0 in law.

    For c = 0 the same seed is reused and the two endpoint sets are identical;
    otherwise two independent streams are compared with per-coordinate KS
    tests (Bonferroni-adjusted minimum p-value).
    """
    spec = RootSystemSpec.a(n, k)
    x0 = np.asarray(x0, dtype=float)
    base = SdeConfig(spec=spec, x0=StartDistribution.at_point(x0), t=t, seed=seed, steps=steps, paths=paths, threads=threads)
    if c == 0.0:
        seeds = (seed, seed)
    else:
        children = np.random.SeedSequence(int(seed)).spawn(2)
        seeds = tuple(int(ch.generate_state(1)[0]) for ch in children)
    batch_ref = simulate_endpoints(replace(base, seed=seeds[0]))
    shifted_cfg = replace(base, x0=StartDistribution.at_point(x0 + c), seed=seeds[1])
    batch_shift = simulate_endpoints(shifted_cfg)
    moved_back = batch_shift.points - c
    if c == 0.0 and np.array_equal(batch_ref.points, moved_back):
        p_combined = 1.0
        stats = {"identical": True, "p_value": 1.0}
    else:
        p_vals = [ks_test_two_sample(batch_ref.points[:, i], moved_back[:, i])[1] for i in range(n)]
        p_combined = min(1.0, n * min(p_vals))
        stats = {"identical": False, "p_value": p_combined, "per_coordinate_p": p_vals}
    return VerificationReport(
        name="translation-invariance-A",
        parameters={"n": n, "k": k, "t": t, "c": c, "x0": list(x0), "paths": paths},
        statistics=stats,
        tolerances={"p_value": p_threshold},
        passed=p_combined > p_threshold,
        seed=seed,
    )
