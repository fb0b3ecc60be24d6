"""Root systems A/B/D: Weyl chambers, weight functions, freezing potentials.

Conventions
-----------
Points live in the closed chamber of the root system, coordinates in
descending order:

* kind A: ``x1 >= x2 >= ... >= xn``
* kind B: ``x1 >= ... >= xn >= 0``
* kind D: ``x1 >= ... >= x_{n-1} >= |xn|`` (last coordinate may be negative)

Raw vectors enter only through :func:`project_to_chamber`.  ``log_weight`` and
``freezing_potential`` are total functions: they return ``-inf`` off the
chamber and on walls where the weight vanishes, which is exactly what the
Metropolis sampler needs for its accept/reject step.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RootKind",
    "RootSystemSpec",
    "ChamberPoint",
    "homogeneity_degree",
    "in_chamber",
    "project_to_chamber",
    "project_batch",
    "log_weight",
    "log_weight_batch",
    "freezing_potential",
    "freezing_potential_b",
]


class RootKind(str, enum.Enum):
    A = "A"
    B = "B"
    D = "D"


def _as_kind(kind) -> RootKind:
    if isinstance(kind, RootKind):
        return kind
    return RootKind(str(kind).upper())


@dataclass(frozen=True)
class RootSystemSpec:
    """Root system kind, particle count, and multiplicity parameters.

    ``multiplicity`` is a single coupling ``k >= 0`` for kinds A and D, and a
    pair ``(k1, k2)`` for kind B (``k1`` on the axis roots, ``k2`` on the
    pairwise roots).
    """

    kind: RootKind
    n: int
    multiplicity: float | tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "kind", _as_kind(self.kind))
        n = int(self.n)
        object.__setattr__(self, "n", n)
        if n < 1:
            raise ValueError("need at least one particle")
        if self.kind is RootKind.D and n < 2:
            raise ValueError("kind D needs n >= 2")
        if self.kind is RootKind.B:
            try:
                k1, k2 = self.multiplicity  # type: ignore[misc]
            except TypeError:
                raise ValueError("kind B takes a multiplicity pair (k1, k2)") from None
            mult: float | tuple[float, float] = (float(k1), float(k2))
        else:
            if isinstance(self.multiplicity, tuple):
                raise ValueError(f"kind {self.kind.value} takes a scalar multiplicity")
            mult = float(self.multiplicity)
        values = mult if isinstance(mult, tuple) else (mult,)
        if any(not math.isfinite(m) or m < 0 for m in values):
            raise ValueError("multiplicities must be finite and >= 0")
        object.__setattr__(self, "multiplicity", mult)

    @classmethod
    def a(cls, n: int, k: float) -> "RootSystemSpec":
        return cls(RootKind.A, n, k)

    @classmethod
    def b(cls, n: int, k1: float, k2: float) -> "RootSystemSpec":
        return cls(RootKind.B, n, (k1, k2))

    @classmethod
    def d(cls, n: int, k: float) -> "RootSystemSpec":
        return cls(RootKind.D, n, k)

    @property
    def k(self) -> float:
        """Scalar coupling (kinds A and D only)."""
        if self.kind is RootKind.B:
            raise AttributeError("kind B carries a pair; use .k1 and .k2")
        return self.multiplicity  # type: ignore[return-value]

    @property
    def k1(self) -> float:
        if self.kind is not RootKind.B:
            raise AttributeError("k1 is defined for kind B only")
        return self.multiplicity[0]  # type: ignore[index]

    @property
    def k2(self) -> float:
        if self.kind is not RootKind.B:
            raise AttributeError("k2 is defined for kind B only")
        return self.multiplicity[1]  # type: ignore[index]

    def to_dict(self) -> dict:
        mult = list(self.multiplicity) if self.kind is RootKind.B else self.multiplicity
        return {"kind": self.kind.value, "n": self.n, "multiplicity": mult}

    @classmethod
    def from_dict(cls, data: dict) -> "RootSystemSpec":
        mult = data["multiplicity"]
        if isinstance(mult, (list, tuple)):
            mult = tuple(mult)
        return cls(data["kind"], data["n"], mult)


def homogeneity_degree(spec: RootSystemSpec) -> float:
    """Degree gamma of the weight function: w(c*y) = c^(2*gamma) * w(y)."""
    n = spec.n
    if spec.kind is RootKind.A:
        return spec.k * n * (n - 1) / 2.0
    if spec.kind is RootKind.B:
        return spec.k2 * n * (n - 1) + spec.k1 * n
    return spec.k * n * (n - 1)


def _coords(y) -> np.ndarray:
    if isinstance(y, ChamberPoint):
        return y.coords
    return np.asarray(y, dtype=float)


def in_chamber(kind, pts) -> np.ndarray | bool:
    """Whether point(s) lie in the closed chamber.  Vectorized over leading axes."""
    kind = _as_kind(kind)
    x = _coords(pts)
    n = x.shape[-1]
    if n == 1:
        ordered = np.ones(x.shape[:-1], dtype=bool)
    else:
        ordered = np.all(x[..., :-1] >= x[..., 1:], axis=-1)
    if kind is RootKind.B:
        ordered = ordered & (x[..., -1] >= 0.0)
    elif kind is RootKind.D:
        # descending on the first n-1 coordinates, last bounded by |.|
        if n == 2:
            ordered = x[..., 0] >= np.abs(x[..., 1])
        else:
            ordered = (
                np.all(x[..., :-2] >= x[..., 1:-1], axis=-1)
                & (x[..., -2] >= np.abs(x[..., -1]))
            )
    if ordered.ndim == 0:
        return bool(ordered)
    return ordered


@dataclass(frozen=True)
class ChamberPoint:
    """A point validated against the closed chamber of its root system kind."""

    kind: RootKind
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "kind", _as_kind(self.kind))
        c = np.array(self.coords, dtype=float, copy=True)
        if c.ndim != 1 or c.size < 1:
            raise ValueError("coords must be a 1-d vector")
        if not np.all(np.isfinite(c)):
            raise ValueError("coords must be finite")
        if not in_chamber(self.kind, c):
            raise ValueError(f"point {c.tolist()} violates the {self.kind.value} chamber order")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def n(self) -> int:
        return self.coords.size


def project_batch(kind, pts: np.ndarray) -> np.ndarray:
    """Map raw vectors to their chamber representatives (Weyl group orbit)."""
    kind = _as_kind(kind)
    x = np.asarray(pts, dtype=float)
    if kind is RootKind.A:
        return -np.sort(-x, axis=-1)
    mag = -np.sort(-np.abs(x), axis=-1)
    if kind is RootKind.B:
        return mag
    # kind D: sign changes come in pairs, so the parity of the number of
    # negative coordinates survives projection and lands on the last slot
    odd = (x < 0).sum(axis=-1) % 2 == 1
    out = mag.copy()
    out[..., -1] = np.where(odd, -out[..., -1], out[..., -1])
    return out


def project_to_chamber(spec: RootSystemSpec | RootKind | str, v) -> ChamberPoint:
    """Project a raw vector onto the chamber and wrap it as a ChamberPoint."""
    kind = spec.kind if isinstance(spec, RootSystemSpec) else _as_kind(spec)
    x = np.asarray(v, dtype=float)
    if x.ndim != 1:
        raise ValueError("project_to_chamber takes a single vector")
    if isinstance(spec, RootSystemSpec) and x.size != spec.n:
        raise ValueError(f"expected {spec.n} coordinates, got {x.size}")
    return ChamberPoint(kind, project_batch(kind, x))


def _pair_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def log_weight_batch(spec: RootSystemSpec, pts: np.ndarray) -> np.ndarray:
    """log of the weight function, vectorized over leading axes.

    Returns ``-inf`` off the chamber, and on walls where the weight vanishes
    (zero multiplicities contribute nothing even on their wall).
    """
    x = np.asarray(pts, dtype=float)
    if x.shape[-1] != spec.n:
        raise ValueError(f"expected {spec.n} coordinates, got {x.shape[-1]}")
    ok = in_chamber(spec.kind, x)
    ok = np.asarray(ok)
    out = np.zeros(x.shape[:-1])
    iu, ju = _pair_indices(spec.n)
    with np.errstate(divide="ignore", invalid="ignore"):
        if spec.kind is RootKind.A:
            if spec.k > 0 and spec.n > 1:
                gaps = x[..., iu] - x[..., ju]
                out = 2.0 * spec.k * np.sum(np.log(gaps), axis=-1)
        else:
            kpair = spec.k2 if spec.kind is RootKind.B else spec.k
            if kpair > 0 and spec.n > 1:
                sqdiff = x[..., iu] ** 2 - x[..., ju] ** 2
                out = 2.0 * kpair * np.sum(np.log(sqdiff), axis=-1)
            if spec.kind is RootKind.B and spec.k1 > 0:
                out = out + 2.0 * spec.k1 * np.sum(np.log(x), axis=-1)
    out = np.where(ok, out, -np.inf)
    out = np.where(np.isnan(out), -np.inf, out)
    if out.ndim == 0:
        return out[()]
    return out


def log_weight(spec: RootSystemSpec, y) -> float:
    """log w_k(y) for a single point (see :func:`log_weight_batch`)."""
    return float(log_weight_batch(spec, _coords(y)))


def _log_gaps_sum(x: np.ndarray, squared: bool) -> float:
    n = x.size
    if n < 2:
        return 0.0
    iu, ju = _pair_indices(n)
    with np.errstate(divide="ignore", invalid="ignore"):
        if squared:
            vals = np.log(x[iu] ** 2 - x[ju] ** 2)
        else:
            vals = np.log(x[iu] - x[ju])
    s = float(np.sum(vals))
    return s if not math.isnan(s) else -math.inf


def freezing_potential_b(y, nu: float) -> float:
    """B-type freezing potential W(y) = 2*sum log(yi^2-yj^2) + 2*nu*sum log yi - |y|^2/2."""
    x = _coords(y)
    if not in_chamber(RootKind.B, x):
        return -math.inf
    if float(nu) < 0:
        raise ValueError("nu must be >= 0")
    w = 2.0 * _log_gaps_sum(x, squared=True) - 0.5 * float(x @ x)
    if nu > 0:
        with np.errstate(divide="ignore"):
            logs = np.log(x)
        w += 2.0 * float(nu) * float(np.sum(logs))
    return w if not math.isnan(w) else -math.inf


def freezing_potential(spec: RootSystemSpec, y, *, nu: float | None = None) -> float:
    """Log-scale potential of the frozen particle configuration.

    W_A(y) = 2 sum_{i<j} log(y_i - y_j) - |y|^2/2, W_B adds the squared-gap
    and axis terms (see freezing_potential_b), W_D is W_B without the axis
    term.  For kinds B and D the chamber maximizer is the freezing target;
    for kind A this normalization puts the maximizer at sqrt(2) times the
    target vector.  For kind B the potential is parameterized by ``nu``;
    when ``nu`` is not given it defaults to ``k1/k2`` of the spec.
    """
    x = _coords(y)
    if x.size != spec.n:
        raise ValueError(f"expected {spec.n} coordinates, got {x.size}")
    if spec.kind is RootKind.A:
        if not in_chamber(RootKind.A, x):
            return -math.inf
        w = 2.0 * _log_gaps_sum(x, squared=False) - 0.5 * float(x @ x)
        return w if not math.isnan(w) else -math.inf
    if spec.kind is RootKind.B:
        if nu is None:
            if spec.k2 == 0:
                raise ValueError("nu undefined: k2 == 0 and no explicit nu given")
            nu = spec.k1 / spec.k2
        return freezing_potential_b(x, nu)
    # kind D
    if not in_chamber(RootKind.D, x):
        return -math.inf
    w = 2.0 * _log_gaps_sum(x, squared=True) - 0.5 * float(x @ x)
    return w if not math.isnan(w) else -math.inf
