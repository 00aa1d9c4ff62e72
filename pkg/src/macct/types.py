"""Core value types shared by every module.

All types are immutable; invalid field values are rejected at construction
so that downstream numeric code never has to re-check for NaN, infinities
or sign errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Absolute tolerance on constraint slack used by every membership test.
# All rates and completion times are O(1)-O(10) at practical SNRs, so an
# absolute tolerance is well conditioned.
EPS_MEM = 1e-9


class InfeasibleError(ValueError):
    """Raised when a requested point or query lies outside the feasible set.

    The message names the violated constraint.
    """


class ConsistencyError(RuntimeError):
    """Internal cross-check failure (two closed forms that must agree did not)."""


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True, slots=True)
class ChannelConfig:
    """Two-user Gaussian multi-access channel, receive powers in linear SNR."""

    p1: float
    p2: float

    def __post_init__(self) -> None:
        for name, value in (("p1", self.p1), ("p2", self.p2)):
            value = _require_finite(name, value)
            if value <= 0.0:
                raise ValueError(f"{name} must be > 0 (zero power never completes), got {value}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True, slots=True)
class RatePair:
    """A point in rate space, bits per channel use.

    Used both for standard rates (codewords spanning a common block) and
    constrained rates (each user's rate defined over its own codeword
    length); the calling context distinguishes the two.
    """

    r1: float
    r2: float

    def __post_init__(self) -> None:
        for name, value in (("r1", self.r1), ("r2", self.r2)):
            value = _require_finite(name, value)
            if value < 0.0:
                raise ValueError(f"{name} must be >= 0, got {value}")
            object.__setattr__(self, name, value)

    def as_tuple(self) -> tuple[float, float]:
        return (self.r1, self.r2)


@dataclass(frozen=True, slots=True)
class TrafficLoad:
    """Per-user bit load, bits per source unit."""

    tau1: float
    tau2: float

    def __post_init__(self) -> None:
        for name, value in (("tau1", self.tau1), ("tau2", self.tau2)):
            value = _require_finite(name, value)
            if value <= 0.0:
                raise ValueError(f"{name} must be > 0, got {value}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True, slots=True)
class CompletionTimePair:
    """A point in completion-time space, channel uses per source unit."""

    d1: float
    d2: float

    def __post_init__(self) -> None:
        for name, value in (("d1", self.d1), ("d2", self.d2)):
            value = _require_finite(name, value)
            if value <= 0.0:
                raise ValueError(f"{name} must be > 0, got {value}")
            object.__setattr__(self, name, value)

    def as_tuple(self) -> tuple[float, float]:
        return (self.d1, self.d2)


@dataclass(frozen=True, slots=True)
class HalfPlane:
    """Linear constraint a*x + b*y >= c."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        for name, value in (("a", self.a), ("b", self.b), ("c", self.c)):
            object.__setattr__(self, name, _require_finite(name, value))
        if self.a == 0.0 and self.b == 0.0:
            raise ValueError("half-plane normal (a, b) must be nonzero")

    def slack(self, x: float, y: float) -> float:
        """Signed slack at (x, y); nonnegative inside the half-plane."""
        return self.a * x + self.b * y - self.c


@dataclass(frozen=True, slots=True)
class ConvexPiece:
    """Intersection of half-planes with an annotated list of corner vertices.

    The half-planes are the authoritative description; vertices are labels
    for plotting and reporting and may omit corners at infinity.
    """

    halfplanes: tuple[HalfPlane, ...]
    vertices: tuple[tuple[str, tuple[float, float]], ...] = ()
