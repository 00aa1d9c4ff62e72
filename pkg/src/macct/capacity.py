"""Gaussian channel primitives and the standard two-user capacity pentagon.

The unit-noise Gaussian channel Y = X1 + X2 + Z with per-symbol power
limits P1, P2 has point-to-point capacity gamma(P) = 0.5*log2(1 + P) and a
pentagonal two-user capacity region

    r1 >= 0, r2 >= 0,
    r1 <= gamma(P1), r2 <= gamma(P2),
    r1 + r2 <= gamma(P1 + P2).

The two corner points of the pentagon, where the sum-rate face meets a
single-user face, are called A and B throughout:

    A = (gamma(P1+P2) - gamma(P2), gamma(P2))     # user 2 at full rate
    B = (gamma(P1), gamma(P1+P2) - gamma(P1))     # user 1 at full rate
"""

from __future__ import annotations

import math
from collections.abc import Sequence

from .types import EPS_MEM, ChannelConfig, ConvexPiece, HalfPlane, RatePair


def gamma(x: float) -> float:
    """Gaussian capacity 0.5*log2(1+x) of a unit-noise link at SNR x.

    Strictly increasing and concave on [0, inf).
    """
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"gamma is defined for finite x >= 0, got {x!r}")
    # log1p keeps full precision for x near 0, where 1 + x would round to 1.
    return 0.5 * math.log1p(x) / math.log(2.0)


def point_to_point_rate(cfg: ChannelConfig, user: int) -> float:
    """Interference-free capacity gamma(P_user) of one user's link."""
    if user == 1:
        return gamma(cfg.p1)
    if user == 2:
        return gamma(cfg.p2)
    raise ValueError(f"user index must be 1 or 2, got {user!r}")


def corner_points(cfg: ChannelConfig) -> tuple[RatePair, RatePair]:
    """Corner points A and B of the capacity pentagon.

    Both lie on the sum-rate face; A maximizes r2, B maximizes r1.
    """
    g1 = gamma(cfg.p1)
    g2 = gamma(cfg.p2)
    g12 = gamma(cfg.p1 + cfg.p2)
    a = RatePair(g12 - g2, g2)
    b = RatePair(g1, g12 - g1)
    return a, b


def standard_capacity_region(cfg: ChannelConfig) -> ConvexPiece:
    """The capacity pentagon as half-planes, with labeled corners.

    Vertices run counterclockwise from the origin: O, E (r1 axis), B, A,
    F (r2 axis).
    """
    g1 = gamma(cfg.p1)
    g2 = gamma(cfg.p2)
    g12 = gamma(cfg.p1 + cfg.p2)
    halfplanes = (
        HalfPlane(1.0, 0.0, 0.0),       # r1 >= 0
        HalfPlane(0.0, 1.0, 0.0),       # r2 >= 0
        HalfPlane(-1.0, 0.0, -g1),      # r1 <= gamma(P1)
        HalfPlane(0.0, -1.0, -g2),      # r2 <= gamma(P2)
        HalfPlane(-1.0, -1.0, -g12),    # r1 + r2 <= gamma(P1+P2)
    )
    vertices = (
        ("O", (0.0, 0.0)),
        ("E", (g1, 0.0)),
        ("B", (g1, g12 - g1)),
        ("A", (g12 - g2, g2)),
        ("F", (0.0, g2)),
    )
    return ConvexPiece(halfplanes, vertices)


def region_contains(piece: ConvexPiece, point: Sequence[float], tol: float = EPS_MEM) -> bool:
    """Membership with absolute slack tolerance: every half-plane slack >= -tol."""
    x, y = float(point[0]), float(point[1])
    return all(hp.slack(x, y) >= -tol for hp in piece.halfplanes)
