"""Constructive side of the region: transmission schedules.

A schedule realizes a completion-time pair as an ordered list of phases.
Feasible pairs need at most two: a shared phase of length min(d1, d2) in
which both users transmit a pentagon-feasible rate pair, then a solo
phase in which the late finisher ships its remaining bits alone, by
convention at the largest admissible rate.  Schedules for pairs on the
same side of d1 = d2 can be spliced by convex combination, which is how
each piece of the region is shown to be convex in the first place.

Durations are normalized (channel uses per source unit), matching the
asymptotic regime in which completion times are defined; no integer block
lengths appear.
"""

from __future__ import annotations

from dataclasses import dataclass

from .capacity import gamma, region_contains, standard_capacity_region
from .constrained import decompose_rate
from .ctregion import ct_contains, ct_query
from .types import (
    EPS_MEM,
    ChannelConfig,
    CompletionTimePair,
    InfeasibleError,
    RatePair,
    TrafficLoad,
)

# Phases shorter than this are dropped entirely.
_MIN_DURATION = 1e-12
_BIT_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class Phase:
    """One constant-rate interval; inactive users are silent (rate exactly 0)."""

    duration: float
    rates: RatePair
    active_users: frozenset[int]

    def __post_init__(self) -> None:
        if self.duration < 0.0:
            raise ValueError(f"phase duration must be >= 0, got {self.duration}")
        if not self.active_users <= {1, 2}:
            raise ValueError("active_users must be a subset of {1, 2}")
        if 1 not in self.active_users and self.rates.r1 != 0.0:
            raise ValueError("inactive user 1 must have rate 0")
        if 2 not in self.active_users and self.rates.r2 != 0.0:
            raise ValueError("inactive user 2 must have rate 0")


@dataclass(frozen=True, slots=True)
class Schedule:
    phases: tuple[Phase, ...]
    achieved: CompletionTimePair

    def bits_delivered(self, user: int) -> float:
        if user == 1:
            return sum(p.duration * p.rates.r1 for p in self.phases)
        if user == 2:
            return sum(p.duration * p.rates.r2 for p in self.phases)
        raise ValueError(f"user index must be 1 or 2, got {user!r}")


@dataclass(frozen=True, slots=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


def synthesize(
    cfg: ChannelConfig, load: TrafficLoad, d: CompletionTimePair, tol: float = EPS_MEM
) -> Schedule:
    """Build the two-phase schedule achieving a feasible pair d.

    The early finisher runs at tau/d for its whole active window; the late
    finisher's rate is split so the solo phase runs as fast as possible
    (its shared-phase rate drops to 0 when the solo phase alone suffices).
    Raises InfeasibleError, naming the violated constraint, for d outside
    the region.
    """
    query = ct_query(load, d)
    decomposition = decompose_rate(cfg, query, tol)  # rejects infeasible d
    r1, r2 = query.rates.r1, query.rates.r2
    if d.d1 == d.d2:
        phases = (Phase(d.d1, RatePair(r1, r2), frozenset({1, 2})),)
    elif d.d1 < d.d2:
        shared = Phase(d.d1, RatePair(r1, decomposition.shared_phase_rate), frozenset({1, 2}))
        solo = Phase(
            d.d2 - d.d1,
            RatePair(0.0, decomposition.solo_phase_rate),
            frozenset({2}),
        )
        phases = (shared, solo)
    else:
        shared = Phase(d.d2, RatePair(decomposition.shared_phase_rate, r2), frozenset({1, 2}))
        solo = Phase(
            d.d1 - d.d2,
            RatePair(decomposition.solo_phase_rate, 0.0),
            frozenset({1}),
        )
        phases = (shared, solo)
    return Schedule(
        tuple(p for p in phases if p.duration >= _MIN_DURATION),
        achieved=d,
    )


def compose(s: Schedule, s_prime: Schedule, alpha: float) -> Schedule:
    """Convex combination of two schedules on the same side of d1 = d2.

    Shared phases of both inputs are spliced first, then the solo phases,
    with all durations scaled by alpha and 1 - alpha; every user's active
    window stays contiguous from time zero.  Schedules from opposite
    sides are rejected: their phase boundaries cannot be aligned, so the
    spliced decoding windows would no longer be valid.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    da, db = s.achieved, s_prime.achieved
    if (da.d1 - da.d2) * (db.d1 - db.d2) < 0.0:
        raise ValueError(
            "cannot compose schedules from opposite sides of d1 = d2: "
            f"({da.d1:.6g}, {da.d2:.6g}) vs ({db.d1:.6g}, {db.d2:.6g})"
        )
    scaled = [
        (p, p.duration * alpha) for p in s.phases
    ] + [(p, p.duration * (1.0 - alpha)) for p in s_prime.phases]
    shared = [(p, t) for p, t in scaled if p.active_users == {1, 2}]
    solo = [(p, t) for p, t in scaled if p.active_users != {1, 2}]
    phases = tuple(
        Phase(t, p.rates, p.active_users)
        for p, t in shared + solo
        if t >= _MIN_DURATION
    )
    achieved = CompletionTimePair(
        alpha * da.d1 + (1.0 - alpha) * db.d1,
        alpha * da.d2 + (1.0 - alpha) * db.d2,
    )
    return Schedule(phases, achieved)


def validate(
    cfg: ChannelConfig, load: TrafficLoad, s: Schedule, tol: float = EPS_MEM
) -> ValidationReport:
    """Check every schedule invariant; violations are reported, not raised."""
    violations: list[str] = []
    pentagon = standard_capacity_region(cfg)

    for k, phase in enumerate(s.phases):
        if not phase.active_users:
            violations.append(f"phase {k}: no active users")
        if phase.active_users == {1, 2}:
            if not region_contains(pentagon, phase.rates.as_tuple(), tol):
                violations.append(
                    f"phase {k}: shared rates ({phase.rates.r1:.6g}, {phase.rates.r2:.6g}) "
                    "outside the capacity pentagon"
                )
        else:
            for user in phase.active_users:
                rate = phase.rates.r1 if user == 1 else phase.rates.r2
                cap = gamma(cfg.p1 if user == 1 else cfg.p2)
                if rate > cap + tol:
                    violations.append(
                        f"phase {k}: solo rate {rate:.6g} exceeds link capacity {cap:.6g}"
                    )

    for user, tau in ((1, load.tau1), (2, load.tau2)):
        delivered = s.bits_delivered(user)
        if abs(delivered - tau) > _BIT_TOL:
            violations.append(
                f"user {user}: delivers {delivered:.12g} bits, load is {tau:.12g}"
            )

    violations.extend(_activity_violations(s))

    if not ct_contains(cfg, load, s.achieved, tol):
        violations.append(
            f"achieved pair ({s.achieved.d1:.6g}, {s.achieved.d2:.6g}) is not in the region"
        )
    return ValidationReport(ok=not violations, violations=tuple(violations))


def _activity_violations(s: Schedule) -> list[str]:
    """Activity must be an initial run of phases ending exactly at d_i."""
    violations: list[str] = []
    for user, deadline in ((1, s.achieved.d1), (2, s.achieved.d2)):
        active_flags = [user in p.active_users for p in s.phases]
        if any(
            later and not earlier
            for earlier, later in zip(active_flags, active_flags[1:])
        ):
            violations.append(f"user {user}: active phases are not an initial run")
        end = 0.0
        last_transmitting_end = None
        for phase in s.phases:
            end += phase.duration
            rate = phase.rates.r1 if user == 1 else phase.rates.r2
            if rate > 0.0:
                last_transmitting_end = end
        if last_transmitting_end is None:
            violations.append(f"user {user}: never transmits")
        elif abs(last_transmitting_end - deadline) > _BIT_TOL:
            violations.append(
                f"user {user}: last nonzero-rate phase ends at "
                f"{last_transmitting_end:.12g}, completion time is {deadline:.12g}"
            )
    return violations
