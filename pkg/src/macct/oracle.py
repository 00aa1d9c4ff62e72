"""Brute-force verification of every closed form in this package.

Everything here rests only on the definitional membership test
(`ct_contains` and its vectorized twin); none of the closed-form region
descriptions or table solutions are consulted when computing an optimum,
so a grid sweep is an independent witness.  Reported optima carry an
explicit certified gap: the objective's slope bound over the box times
the grid cell diagonal.  The region is upward closed, so rounding the
true optimizer up to the next grid point stays feasible and costs at most
that much.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .capacity import corner_points, gamma
from .ctregion import (
    Case,
    RegionDescription,
    build_region,
    classify_case,
    ct_contains,
    ct_contains_grid,
    point_c,
)
from .types import (
    EPS_MEM,
    ChannelConfig,
    CompletionTimePair,
    ConvexPiece,
    InfeasibleError,
    RatePair,
    TrafficLoad,
)

_MIN_RESOLUTION = 16


@dataclass(frozen=True, slots=True)
class GridSpec:
    """Uniform search grid: `resolution` points per axis over a positive box."""

    resolution: int
    d1_bounds: tuple[float, float]
    d2_bounds: tuple[float, float]

    def __post_init__(self) -> None:
        if not isinstance(self.resolution, int) or self.resolution < _MIN_RESOLUTION:
            raise ValueError(f"resolution must be an int >= {_MIN_RESOLUTION}")
        for name, (lo, hi) in (("d1_bounds", self.d1_bounds), ("d2_bounds", self.d2_bounds)):
            if not (math.isfinite(lo) and math.isfinite(hi) and 0.0 < lo < hi):
                raise ValueError(f"{name} must be finite with 0 < lo < hi, got ({lo}, {hi})")

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.linspace(self.d1_bounds[0], self.d1_bounds[1], self.resolution),
            np.linspace(self.d2_bounds[0], self.d2_bounds[1], self.resolution),
        )

    def steps(self) -> tuple[float, float]:
        return (
            (self.d1_bounds[1] - self.d1_bounds[0]) / (self.resolution - 1),
            (self.d2_bounds[1] - self.d2_bounds[0]) / (self.resolution - 1),
        )

    def cell_diagonal(self) -> float:
        return math.hypot(*self.steps())


@dataclass(frozen=True, slots=True)
class OracleReport:
    optimum_value: float
    optimizer: CompletionTimePair
    grid_step: float
    certified_gap_bound: float


def minimax_time_by_bisection(
    cfg: ChannelConfig, load: TrafficLoad, rel_tol: float = 1e-12
) -> float:
    """Smallest t with (t, t) achievable, found by bisection on `ct_contains`.

    Used for default grid bounds so the oracle never leans on the
    closed-form solvers.
    """
    g1 = gamma(cfg.p1)
    g2 = gamma(cfg.p2)
    g12 = gamma(cfg.p1 + cfg.p2)
    lo = max(load.tau1 / g1, load.tau2 / g2)
    hi = max(lo, (load.tau1 + load.tau2) / g12)
    if ct_contains(cfg, load, CompletionTimePair(lo, lo), tol=0.0):
        return lo
    if not ct_contains(cfg, load, CompletionTimePair(hi, hi), tol=0.0):
        raise InfeasibleError("upper bisection bracket unexpectedly infeasible")
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if ct_contains(cfg, load, CompletionTimePair(mid, mid), tol=0.0):
            hi = mid
        else:
            lo = mid
    return hi


def default_grid(cfg: ChannelConfig, load: TrafficLoad, resolution: int = 2001) -> GridSpec:
    """Box [0.9 * min solo floor, 4 * equal-time optimum] per axis."""
    lo = 0.9 * min(load.tau1 / gamma(cfg.p1), load.tau2 / gamma(cfg.p2))
    hi = 4.0 * minimax_time_by_bisection(cfg, load)
    return GridSpec(resolution, (lo, hi), (lo, hi))


def oracle_weighted_min(
    cfg: ChannelConfig, load: TrafficLoad, w: float, spec: GridSpec
) -> OracleReport:
    """Exhaustive minimum of w*d1 + (1-w)*d2 over feasible grid points."""
    if not (math.isfinite(w) and 0.0 <= w <= 1.0):
        raise ValueError(f"weight must lie in [0, 1], got {w!r}")
    x, y = spec.axes()
    mask = ct_contains_grid(cfg, load, x[:, None], y[None, :])
    if not mask.any():
        raise InfeasibleError(
            f"no feasible grid point in {spec.d1_bounds} x {spec.d2_bounds}"
        )
    objective = np.where(mask, w * x[:, None] + (1.0 - w) * y[None, :], np.inf)
    flat = int(np.argmin(objective))  # first hit = lexicographically smallest point
    i, j = divmod(flat, spec.resolution)
    gap = max(w, 1.0 - w) * spec.cell_diagonal()
    return OracleReport(
        optimum_value=float(objective[i, j]),
        optimizer=CompletionTimePair(float(x[i]), float(y[j])),
        grid_step=max(spec.steps()),
        certified_gap_bound=gap,
    )


def oracle_minimax(cfg: ChannelConfig, load: TrafficLoad, spec: GridSpec) -> OracleReport:
    """Exhaustive minimum of max(d1, d2) over feasible grid points.

    A coarse sub-sampled sweep brackets the optimum first; every grid
    point that could still beat it has both coordinates below that value,
    so the fine sweep runs on the corner square around the diagonal only.
    """
    x, y = spec.axes()
    stride = max(1, spec.resolution // 64)
    coarse = _minimax_sweep(cfg, load, x[::stride], y[::stride])
    if coarse is None:
        value, point = _require_minimax(cfg, load, x, y, spec)
    else:
        cutoff = coarse[0] + spec.cell_diagonal()
        value, point = _require_minimax(
            cfg, load, x[x <= cutoff], y[y <= cutoff], spec
        )
    return OracleReport(
        optimum_value=value,
        optimizer=point,
        grid_step=max(spec.steps()),
        certified_gap_bound=spec.cell_diagonal(),
    )


def _minimax_sweep(
    cfg: ChannelConfig, load: TrafficLoad, x: np.ndarray, y: np.ndarray
) -> tuple[float, CompletionTimePair] | None:
    if x.size == 0 or y.size == 0:
        return None
    mask = ct_contains_grid(cfg, load, x[:, None], y[None, :])
    if not mask.any():
        return None
    objective = np.where(mask, np.maximum(x[:, None], y[None, :]), np.inf)
    flat = int(np.argmin(objective))
    i, j = divmod(flat, y.size)
    return float(objective[i, j]), CompletionTimePair(float(x[i]), float(y[j]))


def _require_minimax(
    cfg: ChannelConfig, load: TrafficLoad, x: np.ndarray, y: np.ndarray, spec: GridSpec
) -> tuple[float, CompletionTimePair]:
    result = _minimax_sweep(cfg, load, x, y)
    if result is None:
        raise InfeasibleError(
            f"no feasible grid point in {spec.d1_bounds} x {spec.d2_bounds}"
        )
    return result


def oracle_region_equivalence(
    cfg: ChannelConfig,
    load: TrafficLoad,
    spec: GridSpec,
    eps_boundary: float = 1e-6,
    region: RegionDescription | None = None,
    tol: float = EPS_MEM,
) -> list[tuple[float, float]]:
    """Grid points where the half-plane union disagrees with `ct_contains`.

    Points within eps_boundary (Euclidean) of any piece boundary are
    exempt.  An empty list certifies the region description on this grid.
    The `region` override lets tests feed a deliberately wrong description.
    """
    if region is None:
        region = build_region(cfg, load)
    x, y = spec.axes()
    d1 = x[:, None]
    d2 = y[None, :]
    union = np.zeros((x.size, y.size), dtype=bool)
    near_boundary = np.zeros_like(union)
    for _, piece in region.pieces:
        union |= _piece_mask(piece, d1, d2, tol)
        for hp in piece.halfplanes:
            dist = np.abs(hp.a * d1 + hp.b * d2 - hp.c) / math.hypot(hp.a, hp.b)
            near_boundary |= dist <= eps_boundary
    ct = ct_contains_grid(cfg, load, d1, d2, tol)
    bad = (union != ct) & ~near_boundary
    ii, jj = np.nonzero(bad)
    return [(float(x[i]), float(y[j])) for i, j in zip(ii, jj)]


def _piece_mask(piece: ConvexPiece, d1: np.ndarray, d2: np.ndarray, tol: float) -> np.ndarray:
    mask = np.ones(np.broadcast_shapes(d1.shape, d2.shape), dtype=bool)
    for hp in piece.halfplanes:
        mask &= hp.a * d1 + hp.b * d2 - hp.c >= -tol
    return mask


def dominant_extreme_points(
    cfg: ChannelConfig, load: TrafficLoad, branch: int
) -> list[tuple[str, RatePair]]:
    """Undominated extreme points of the pentagon slice on one side of the ray.

    These are the only candidates a weighted-time minimizer over that
    branch ever needs to inspect.
    """
    if branch not in (1, 2):
        raise ValueError(f"branch must be 1 or 2, got {branch!r}")
    case = classify_case(cfg, load)
    a, b = corner_points(cfg)
    c = point_c(cfg, load)
    table: dict[tuple[int, Case], list[tuple[str, RatePair]]] = {
        (1, Case.I): [("C", c)],
        (1, Case.II): [("B", b), ("C", c)],
        (1, Case.III): [("A", a), ("B", b)],
        (2, Case.I): [("A", a), ("B", b)],
        (2, Case.II): [("A", a), ("C", c)],
        (2, Case.III): [("C", c)],
    }
    return table[(branch, case)]
