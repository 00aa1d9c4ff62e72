"""Capacity region for users whose codewords span different block lengths.

With codeword lengths n1, n2 and c = n1/n2, each user's constrained rate
R_i is defined over its own n_i channel uses; the early finisher falls
silent (sends 0) while the other keeps transmitting alone.  The closed
form of the c-constrained region for the Gaussian channel is

    R1 <= gamma(P1),  R2 <= gamma(P2),
    max(1,c)*R1 + max(1,1/c)*R2
        <= (c-1)*gamma(P1)*[c>=1] + (1/c-1)*gamma(P2)*[c<1] + gamma(P1+P2),

which at c = 1 is exactly the standard pentagon.  An equivalent test maps
the query back into the standard pentagon by compressing the late
finisher's rate onto the shared interval and clamping at zero:

    c < 1:  (R1, [R2/c - (1/c-1)*gamma(P2)]+)  in pentagon
    c > 1:  ([c*R1 - (c-1)*gamma(P1)]+, R2)    in pentagon

The direct inequalities are the canonical membership test here (no
division by small c); the clamp transform is kept for cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .capacity import gamma
from .types import EPS_MEM, ChannelConfig, InfeasibleError, RatePair

# Constraint names used in slack reports and infeasibility errors.
SINGLE_USER_1 = "single_user_1"
SINGLE_USER_2 = "single_user_2"
SUM_RATE = "sum_rate"

_C_MIN = 1e-12
_C_MAX = 1e12


@dataclass(frozen=True, slots=True)
class ConstrainedRateQuery:
    """A constrained rate pair together with the block-length ratio c = n1/n2."""

    rates: RatePair
    c: float

    def __post_init__(self) -> None:
        c = float(self.c)
        if not math.isfinite(c) or c <= 0.0:
            raise ValueError(f"c must be a positive finite ratio, got {c!r}")
        if not _C_MIN <= c <= _C_MAX:
            raise ValueError(f"c={c} is outside the well-conditioned range [{_C_MIN}, {_C_MAX}]")
        object.__setattr__(self, "c", c)


@dataclass(frozen=True, slots=True)
class RateDecomposition:
    """Split of the late finisher's rate into a shared-phase and a solo-phase part.

    With solo_user = 2 (c < 1):  R2 = c*shared + (1-c)*solo, and
    (R1, shared) lies in the standard pentagon while solo <= gamma(P2).
    Mirrored with weights 1/c for solo_user = 1 (c > 1).
    """

    shared_phase_rate: float
    solo_phase_rate: float
    solo_user: int


def constrained_slacks(cfg: ChannelConfig, q: ConstrainedRateQuery) -> dict[str, float]:
    """Signed slacks of the three region inequalities (nonnegative = satisfied)."""
    g1 = gamma(cfg.p1)
    g2 = gamma(cfg.p2)
    g12 = gamma(cfg.p1 + cfg.p2)
    r1, r2 = q.rates.r1, q.rates.r2
    c = q.c
    if c >= 1.0:
        sum_slack = (c - 1.0) * g1 + g12 - (c * r1 + r2)
    else:
        sum_slack = (1.0 / c - 1.0) * g2 + g12 - (r1 + r2 / c)
    return {
        SINGLE_USER_1: g1 - r1,
        SINGLE_USER_2: g2 - r2,
        SUM_RATE: sum_slack,
    }


def constrained_contains(cfg: ChannelConfig, q: ConstrainedRateQuery, tol: float = EPS_MEM) -> bool:
    """Membership in the c-constrained region via the direct inequalities."""
    return all(s >= -tol for s in constrained_slacks(cfg, q).values())


def clamp_transform(cfg: ChannelConfig, q: ConstrainedRateQuery) -> RatePair:
    """Equivalent standard-pentagon test point for a constrained query.

    Identity at c = 1.  The clamp at zero makes the transform
    non-invertible when active, so this is a membership tool, not a
    bijection.
    """
    c = q.c
    r1, r2 = q.rates.r1, q.rates.r2
    if c == 1.0:
        return q.rates
    if c < 1.0:
        g2 = gamma(cfg.p2)
        return RatePair(r1, max(0.0, r2 / c - (1.0 / c - 1.0) * g2))
    g1 = gamma(cfg.p1)
    return RatePair(max(0.0, c * r1 - (c - 1.0) * g1), r2)


def decompose_rate(
    cfg: ChannelConfig, q: ConstrainedRateQuery, tol: float = EPS_MEM
) -> RateDecomposition:
    """Split the late finisher's rate between the shared and solo phases.

    The solo-phase rate is maximal: min(point-to-point capacity, the rate
    that ships every bit in the solo phase alone).  That convention frees
    the channel of multi-user interference as early as possible and makes
    the shared-phase pair sit exactly on the clamp-transform image.

    Raises InfeasibleError (naming the violated constraint) when the query
    is outside the c-constrained region.
    """
    slacks = constrained_slacks(cfg, q)
    violated = [name for name, s in slacks.items() if s < -tol]
    if violated:
        raise InfeasibleError(
            f"rate pair ({q.rates.r1:.6g}, {q.rates.r2:.6g}) at c={q.c:.6g} is infeasible: "
            + ", ".join(f"{name} violated by {-slacks[name]:.3g}" for name in violated)
        )
    c = q.c
    if c == 1.0:
        # Both users finish together; the solo phase has zero length.
        return RateDecomposition(shared_phase_rate=q.rates.r2, solo_phase_rate=0.0, solo_user=2)
    if c < 1.0:
        solo_cap = gamma(cfg.p2)
        solo = min(solo_cap, q.rates.r2 / (1.0 - c))
        shared = max(0.0, (q.rates.r2 - (1.0 - c) * solo) / c)
        return RateDecomposition(shared_phase_rate=shared, solo_phase_rate=solo, solo_user=2)
    solo_cap = gamma(cfg.p1)
    solo = min(solo_cap, q.rates.r1 / (1.0 - 1.0 / c))
    shared = max(0.0, c * q.rates.r1 - (c - 1.0) * solo)
    return RateDecomposition(shared_phase_rate=shared, solo_phase_rate=solo, solo_user=1)
