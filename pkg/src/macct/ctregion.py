"""The completion-time region of the two-user Gaussian multi-access channel.

User i must deliver tau_i bits per source unit; transmitting at constrained
rate R_i it finishes after d_i = tau_i / R_i channel uses per source unit.
A pair (d1, d2) is achievable exactly when the rate pair (tau1/d1, tau2/d2)
lies in the c-constrained capacity region with c = d1/d2 -- that test
(`ct_contains`) is the definitional ground truth for everything else here.

The region splits into two convex pieces: D1 on the d1 <= d2 side and D2 on
d1 >= d2.  Each piece is an intersection of half-planes among

    d1 >= tau1/gamma(P1),  d2 >= tau2/gamma(P2),           (solo floors)
    [gamma(P1+P2)-gamma(P2)]*d1 + gamma(P2)*d2 >= tau1+tau2    (sum, D1)
    gamma(P1)*d1 + [gamma(P1+P2)-gamma(P1)]*d2 >= tau1+tau2    (sum, D2)

and which sum constraint is non-redundant depends on where the demand ray
r2/r1 = tau2/tau1 exits the capacity pentagon (point C):

    Case I   -- C on the r1 = gamma(P1) face (tau2 relatively small),
    Case II  -- C on the sum-rate face,
    Case III -- C on the r2 = gamma(P2) face.

In Case II the union of the two pieces is not convex: it has a notch at the
equal-time vertex Cbar.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .capacity import corner_points, gamma
from .constrained import ConstrainedRateQuery, constrained_contains, constrained_slacks
from .types import (
    EPS_MEM,
    ChannelConfig,
    CompletionTimePair,
    ConvexPiece,
    HalfPlane,
    RatePair,
    TrafficLoad,
)


class Case(enum.Enum):
    I = "I"
    II = "II"
    III = "III"


@dataclass(frozen=True, slots=True)
class RegionDescription:
    """The region as two convex pieces plus the case label.

    piece_d1 covers d1 <= d2, piece_d2 covers d1 >= d2; the achievable set
    is their union.
    """

    case: Case
    piece_d1: ConvexPiece
    piece_d2: ConvexPiece

    @property
    def pieces(self) -> tuple[tuple[str, ConvexPiece], ...]:
        return (("D1", self.piece_d1), ("D2", self.piece_d2))


def classify_case(cfg: ChannelConfig, load: TrafficLoad) -> Case:
    """Locate point C by the load ratio; ties go to Case I / Case III."""
    g1 = gamma(cfg.p1)
    g2 = gamma(cfg.p2)
    g12 = gamma(cfg.p1 + cfg.p2)
    # Cross-multiplied forms of tau2/tau1 <= (g12-g1)/g1 and >= g2/(g12-g2).
    if load.tau2 * g1 <= load.tau1 * (g12 - g1):
        return Case.I
    if load.tau2 * (g12 - g2) >= load.tau1 * g2:
        return Case.III
    return Case.II


def point_c(cfg: ChannelConfig, load: TrafficLoad) -> RatePair:
    """Intersection of the demand ray r2/r1 = tau2/tau1 with the pentagon boundary."""
    return point_c_for_case(cfg, load, classify_case(cfg, load))


def point_c_for_case(cfg: ChannelConfig, load: TrafficLoad, case: Case) -> RatePair:
    """Point C via one case's exit-face formula.

    The formulas of adjacent cases coincide on the classification
    boundaries, which case-boundary consistency checks exploit.
    """
    g1 = gamma(cfg.p1)
    g2 = gamma(cfg.p2)
    g12 = gamma(cfg.p1 + cfg.p2)
    if case is Case.I:
        return RatePair(g1, (load.tau2 / load.tau1) * g1)
    if case is Case.III:
        return RatePair((load.tau1 / load.tau2) * g2, g2)
    scale = g12 / (load.tau1 + load.tau2)
    return RatePair(load.tau1 * scale, load.tau2 * scale)


def map_rate_to_ct(
    cfg: ChannelConfig, load: TrafficLoad, branch: int, r: RatePair
) -> CompletionTimePair:
    """Completion times reached by operating at pentagon point r on one branch.

    Branch 1 (d1 <= d2): user 1 runs at r1 the whole time it is active, so
    d1 = tau1/r1; user 2 sends at r2 alongside and finishes its remaining
    bits alone at full rate gamma(P2).  Branch 2 mirrors the roles.
    """
    g1 = gamma(cfg.p1)
    g2 = gamma(cfg.p2)
    if branch == 1:
        if r.r1 <= 0.0:
            raise ValueError("branch 1 needs r1 > 0 (it divides by r1)")
        d1 = load.tau1 / r.r1
        d2 = load.tau2 / g2 + (g2 - r.r2) * load.tau1 / (g2 * r.r1)
        return CompletionTimePair(d1, d2)
    if branch == 2:
        if r.r2 <= 0.0:
            raise ValueError("branch 2 needs r2 > 0 (it divides by r2)")
        d2 = load.tau2 / r.r2
        d1 = load.tau1 / g1 + (g1 - r.r1) * load.tau2 / (g1 * r.r2)
        return CompletionTimePair(d1, d2)
    raise ValueError(f"branch must be 1 or 2, got {branch!r}")


def ct_query(load: TrafficLoad, d: CompletionTimePair) -> ConstrainedRateQuery:
    """The constrained-rate query (tau1/d1, tau2/d2) at ratio c = d1/d2."""
    return ConstrainedRateQuery(
        RatePair(load.tau1 / d.d1, load.tau2 / d.d2), d.d1 / d.d2
    )


def ct_contains(
    cfg: ChannelConfig, load: TrafficLoad, d: CompletionTimePair, tol: float = EPS_MEM
) -> bool:
    """Definitional membership test: the induced rate pair must be achievable."""
    return constrained_contains(cfg, ct_query(load, d), tol)


def ct_slacks(cfg: ChannelConfig, load: TrafficLoad, d: CompletionTimePair) -> dict[str, float]:
    """Rate-space slacks of the membership inequalities at d."""
    return constrained_slacks(cfg, ct_query(load, d))


def ct_contains_grid(
    cfg: ChannelConfig,
    load: TrafficLoad,
    d1: np.ndarray,
    d2: np.ndarray,
    tol: float = EPS_MEM,
) -> np.ndarray:
    """Vectorized `ct_contains` over positive arrays d1, d2 (broadcastable).

    Mirrors the scalar arithmetic exactly so both paths agree everywhere.
    """
    g1 = gamma(cfg.p1)
    g2 = gamma(cfg.p2)
    g12 = gamma(cfg.p1 + cfg.p2)
    r1 = load.tau1 / d1
    r2 = load.tau2 / d2
    c = d1 / d2
    slack_hi = (c - 1.0) * g1 + g12 - (c * r1 + r2)
    slack_lo = (1.0 / c - 1.0) * g2 + g12 - (r1 + r2 / c)
    sum_slack = np.where(c >= 1.0, slack_hi, slack_lo)
    return (g1 - r1 >= -tol) & (g2 - r2 >= -tol) & (sum_slack >= -tol)


def outer_bound(cfg: ChannelConfig, load: TrafficLoad) -> ConvexPiece:
    """Quadrant bound: no user beats its interference-free completion time."""
    lo1 = load.tau1 / gamma(cfg.p1)
    lo2 = load.tau2 / gamma(cfg.p2)
    return ConvexPiece(
        halfplanes=(HalfPlane(1.0, 0.0, lo1), HalfPlane(0.0, 1.0, lo2)),
        vertices=(("corner", (lo1, lo2)),),
    )


def equal_time_vertex(cfg: ChannelConfig, load: TrafficLoad) -> CompletionTimePair:
    """Cbar: image of point C, the boundary point with d1 = d2."""
    c = point_c(cfg, load)
    d = map_rate_to_ct(cfg, load, 1, c)
    # Both map branches coincide on the demand ray; pin exact equality.
    t = load.tau1 / c.r1
    assert abs(d.d1 - t) <= 1e-12 * max(1.0, t) and abs(d.d2 - t) <= 1e-9 * max(1.0, t)
    return CompletionTimePair(t, t)


def build_region(cfg: ChannelConfig, load: TrafficLoad) -> RegionDescription:
    """Half-plane description of both pieces with labeled corner vertices.

    Each piece carries the two solo floors and its ordering constraint; a
    piece additionally carries its sum constraint only in the cases where
    that constraint is not implied by the rest (D1: Cases II and III, D2:
    Cases I and II).  Union membership agrees with `ct_contains`.
    """
    case = classify_case(cfg, load)
    g1 = gamma(cfg.p1)
    g2 = gamma(cfg.p2)
    g12 = gamma(cfg.p1 + cfg.p2)
    lo1 = load.tau1 / g1
    lo2 = load.tau2 / g2
    total = load.tau1 + load.tau2

    floor1 = HalfPlane(1.0, 0.0, lo1)
    floor2 = HalfPlane(0.0, 1.0, lo2)
    order_d1 = HalfPlane(-1.0, 1.0, 0.0)  # d1 <= d2
    order_d2 = HalfPlane(1.0, -1.0, 0.0)  # d1 >= d2
    sum_d1 = HalfPlane(g12 - g2, g2, total)
    sum_d2 = HalfPlane(g1, g12 - g1, total)

    a, b = corner_points(cfg)
    cbar = equal_time_vertex(cfg, load).as_tuple()

    if case is Case.I:
        piece_d1 = ConvexPiece((floor1, floor2, order_d1), (("Cbar", cbar),))
        piece_d2 = ConvexPiece(
            (floor1, floor2, sum_d2, order_d2),
            (
                ("Cbar", cbar),
                ("Bbar", map_rate_to_ct(cfg, load, 2, b).as_tuple()),
                ("Abar", map_rate_to_ct(cfg, load, 2, a).as_tuple()),
            ),
        )
    elif case is Case.II:
        piece_d1 = ConvexPiece(
            (floor1, floor2, sum_d1, order_d1),
            (
                ("Bbar'", map_rate_to_ct(cfg, load, 1, b).as_tuple()),
                ("Cbar", cbar),
            ),
        )
        piece_d2 = ConvexPiece(
            (floor1, floor2, sum_d2, order_d2),
            (
                ("Cbar", cbar),
                ("Abar", map_rate_to_ct(cfg, load, 2, a).as_tuple()),
            ),
        )
    else:
        piece_d1 = ConvexPiece(
            (floor1, floor2, sum_d1, order_d1),
            (
                ("Bbar'", map_rate_to_ct(cfg, load, 1, b).as_tuple()),
                ("Abar'", map_rate_to_ct(cfg, load, 1, a).as_tuple()),
                ("Cbar", cbar),
            ),
        )
        piece_d2 = ConvexPiece((floor1, floor2, order_d2), (("Cbar", cbar),))
    return RegionDescription(case, piece_d1, piece_d2)


def region_description_contains(
    desc: RegionDescription, point: tuple[float, float], tol: float = EPS_MEM
) -> bool:
    """Union membership over the two pieces."""
    x, y = float(point[0]), float(point[1])
    return any(
        all(hp.slack(x, y) >= -tol for hp in piece.halfplanes)
        for _, piece in desc.pieces
    )


def boundary_polyline(
    cfg: ChannelConfig, load: TrafficLoad, d1_max: float, d2_max: float
) -> list[tuple[float, float]]:
    """Ordered boundary points of the region union, rays cut at the given box.

    Runs from the top of the vertical ray (d1 at its floor) through the
    labeled corners to the right end of the horizontal ray (d2 at its
    floor).  In Case II the path turns inward at Cbar, tracing the notch.
    """
    desc = build_region(cfg, load)
    lo1 = load.tau1 / gamma(cfg.p1)
    lo2 = load.tau2 / gamma(cfg.p2)
    corners: dict[str, tuple[float, float]] = {}
    for _, piece in desc.pieces:
        corners.update(dict(piece.vertices))
    if d1_max < max(x for x, _ in corners.values()) or d2_max < max(
        y for _, y in corners.values()
    ):
        raise ValueError("bounding box does not contain every region vertex")
    if desc.case is Case.I:
        middle = [corners["Cbar"], corners["Bbar"], corners["Abar"]]
    elif desc.case is Case.II:
        middle = [corners["Bbar'"], corners["Cbar"], corners["Abar"]]
    else:
        middle = [corners["Bbar'"], corners["Abar'"], corners["Cbar"]]
    return [(lo1, d2_max), *middle, (d1_max, lo2)]
