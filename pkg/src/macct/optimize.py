"""Closed-form minimizers of weighted and worst-case completion time.

The weighted objective w*d1 + (1-w)*d2 restricted to one convex piece of
the region equals, after the change of variables d = map_rate_to_ct(r),

    branch 1:  (1-w)*tau2/gamma(P2) + tau1*(gamma(P2) - (1-w)*r2)
                                       / (gamma(P2)*r1),
    branch 2:  w*tau1/gamma(P1) + tau2*(gamma(P1) - w*r1)
                                       / (gamma(P1)*r2),

a monotone fractional function over the pentagon slice on that branch's
side of the demand ray.  Its minimum sits at one of the dominant extreme
points A, B or C, and which one wins flips at a single weight threshold:

    w1 = (gamma(P1+P2) - gamma(P2)) / gamma(P1+P2)   (branch 1 rows)
    w2 = gamma(P1) / gamma(P1+P2)                    (branch 2 rows)
    w3 = tau1 / (tau1 + tau2)                        (full-region, Case II)

Thresholds are taken with closed lower intervals: at w equal to a
threshold the left cell's optimizer is returned and the tie is flagged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .capacity import corner_points, gamma
from .ctregion import Case, classify_case, equal_time_vertex, map_rate_to_ct, point_c_for_case
from .types import (
    ChannelConfig,
    CompletionTimePair,
    ConsistencyError,
    RatePair,
    TrafficLoad,
)

_TIE_TOL = 1e-12
_BOUNDARY_REL_TOL = 1e-12
_BOUNDARY_VALUE_TOL = 1e-9

# (low-weight label, high-weight label, threshold name) per branch and case.
_SUBREGION_CELLS: dict[tuple[int, Case], tuple[str, str, str]] = {
    (1, Case.I): ("C", "C", "w1"),
    (1, Case.II): ("C", "B", "w1"),
    (1, Case.III): ("A", "B", "w1"),
    (2, Case.I): ("A", "B", "w2"),
    (2, Case.II): ("A", "C", "w2"),
    (2, Case.III): ("C", "C", "w2"),
}

# ((low branch, low label), (high branch, high label), threshold name) per case.
_FULL_CELLS: dict[Case, tuple[tuple[int, str], tuple[int, str], str]] = {
    Case.I: ((2, "A"), (2, "B"), "w2"),
    Case.II: ((2, "A"), (1, "B"), "w3"),
    Case.III: ((1, "A"), (1, "B"), "w1"),
}


@dataclass(frozen=True, slots=True)
class Thresholds:
    w1: float
    w2: float
    w3: float

    def by_name(self, name: str) -> float:
        return {"w1": self.w1, "w2": self.w2, "w3": self.w3}[name]


@dataclass(frozen=True, slots=True)
class WeightedSumSolution:
    weight: float
    optimal_value: float
    optimizer_point: CompletionTimePair
    rate_point_label: str
    branch: int
    tie: bool


def thresholds(cfg: ChannelConfig, load: TrafficLoad) -> Thresholds:
    """The three switching weights; always w1 < w2 by strict subadditivity."""
    g1 = gamma(cfg.p1)
    g2 = gamma(cfg.p2)
    g12 = gamma(cfg.p1 + cfg.p2)
    return Thresholds(
        w1=(g12 - g2) / g12,
        w2=g1 / g12,
        w3=load.tau1 / (load.tau1 + load.tau2),
    )


def objective_d(
    cfg: ChannelConfig, load: TrafficLoad, branch: int, w: float, r: RatePair
) -> float:
    """Branch objective at rate point r; equals w*d1 + (1-w)*d2 of the mapped point."""
    _check_weight(w)
    if branch == 1:
        if r.r1 <= 0.0:
            raise ValueError("branch 1 objective divides by r1; need r1 > 0")
        g2 = gamma(cfg.p2)
        wb = 1.0 - w
        return wb * load.tau2 / g2 + load.tau1 * (g2 - wb * r.r2) / (g2 * r.r1)
    if branch == 2:
        if r.r2 <= 0.0:
            raise ValueError("branch 2 objective divides by r2; need r2 > 0")
        g1 = gamma(cfg.p1)
        return w * load.tau1 / g1 + load.tau2 * (g1 - w * r.r1) / (g1 * r.r2)
    raise ValueError(f"branch must be 1 or 2, got {branch!r}")


def minimize_subregion(
    cfg: ChannelConfig, load: TrafficLoad, branch: int, w: float
) -> WeightedSumSolution:
    """Minimize w*d1 + (1-w)*d2 over one convex piece of the region."""
    _check_weight(w)
    if branch not in (1, 2):
        raise ValueError(f"branch must be 1 or 2, got {branch!r}")
    case = classify_case(cfg, load)
    solution = _solve_subregion(cfg, load, branch, w, case)
    adjacent = _adjacent_case(cfg, load)
    if adjacent is not None:
        other = _solve_subregion(cfg, load, branch, w, adjacent)
        _require_agreement("sub-region minimum", solution.optimal_value, other.optimal_value)
    return solution


def minimize_weighted_sum(cfg: ChannelConfig, load: TrafficLoad, w: float) -> WeightedSumSolution:
    """Minimize w*d1 + (1-w)*d2 over the whole (possibly non-convex) region."""
    _check_weight(w)
    case = classify_case(cfg, load)
    solution = _solve_full(cfg, load, w, case)
    adjacent = _adjacent_case(cfg, load)
    if adjacent is not None:
        other = _solve_full(cfg, load, w, adjacent)
        _require_agreement("weighted-sum minimum", solution.optimal_value, other.optimal_value)
    return solution


def minimax(cfg: ChannelConfig, load: TrafficLoad) -> tuple[float, CompletionTimePair]:
    """Smallest achievable max(d1, d2), attained at the equal-time vertex."""
    case = classify_case(cfg, load)
    value = _minimax_value(cfg, load, case)
    adjacent = _adjacent_case(cfg, load)
    if adjacent is not None:
        _require_agreement("minimax value", value, _minimax_value(cfg, load, adjacent))
    point = equal_time_vertex(cfg, load)
    return value, point


def _minimax_value(cfg: ChannelConfig, load: TrafficLoad, case: Case) -> float:
    if case is Case.I:
        return load.tau1 / gamma(cfg.p1)
    if case is Case.III:
        return load.tau2 / gamma(cfg.p2)
    return (load.tau1 + load.tau2) / gamma(cfg.p1 + cfg.p2)


def _rate_point(cfg: ChannelConfig, load: TrafficLoad, label: str, case: Case) -> RatePair:
    a, b = corner_points(cfg)
    if label == "A":
        return a
    if label == "B":
        return b
    return point_c_for_case(cfg, load, case)


def _evaluate_cell(
    cfg: ChannelConfig, load: TrafficLoad, branch: int, label: str, w: float, case: Case
) -> tuple[float, CompletionTimePair]:
    r = _rate_point(cfg, load, label, case)
    d = map_rate_to_ct(cfg, load, branch, r)
    return w * d.d1 + (1.0 - w) * d.d2, d


def _solve_subregion(
    cfg: ChannelConfig, load: TrafficLoad, branch: int, w: float, case: Case
) -> WeightedSumSolution:
    lo_label, hi_label, thr_name = _SUBREGION_CELLS[(branch, case)]
    threshold = thresholds(cfg, load).by_name(thr_name)
    label = lo_label if w <= threshold else hi_label
    other_label = hi_label if label == lo_label else lo_label
    value, point = _evaluate_cell(cfg, load, branch, label, w, case)
    other_value, other_point = _evaluate_cell(cfg, load, branch, other_label, w, case)
    tie = _is_tie(value, point, other_value, other_point)
    return WeightedSumSolution(w, value, point, label, branch, tie)


def _solve_full(
    cfg: ChannelConfig, load: TrafficLoad, w: float, case: Case
) -> WeightedSumSolution:
    (lo_branch, lo_label), (hi_branch, hi_label), thr_name = _FULL_CELLS[case]
    threshold = thresholds(cfg, load).by_name(thr_name)
    branch, label = (lo_branch, lo_label) if w <= threshold else (hi_branch, hi_label)
    other_branch, other_label = (
        (hi_branch, hi_label) if (branch, label) == (lo_branch, lo_label) else (lo_branch, lo_label)
    )
    value, point = _evaluate_cell(cfg, load, branch, label, w, case)
    other_value, other_point = _evaluate_cell(cfg, load, other_branch, other_label, w, case)
    tie = _is_tie(value, point, other_value, other_point)
    return WeightedSumSolution(w, value, point, label, branch, tie)


def _is_tie(
    value: float,
    point: CompletionTimePair,
    other_value: float,
    other_point: CompletionTimePair,
) -> bool:
    same_value = abs(other_value - value) <= _TIE_TOL * max(1.0, abs(value))
    distinct = (
        abs(other_point.d1 - point.d1) > _TIE_TOL or abs(other_point.d2 - point.d2) > _TIE_TOL
    )
    return same_value and distinct


def _check_weight(w: float) -> None:
    if not (isinstance(w, (int, float)) and math.isfinite(w) and 0.0 <= w <= 1.0):
        raise ValueError(f"weight must lie in [0, 1], got {w!r}")


def _adjacent_case(cfg: ChannelConfig, load: TrafficLoad) -> Case | None:
    """Case II when the load ratio sits exactly on a classification boundary."""
    g1 = gamma(cfg.p1)
    g2 = gamma(cfg.p2)
    g12 = gamma(cfg.p1 + cfg.p2)
    lhs1, rhs1 = load.tau2 * g1, load.tau1 * (g12 - g1)
    if abs(lhs1 - rhs1) <= _BOUNDARY_REL_TOL * max(lhs1, rhs1):
        return Case.II
    lhs3, rhs3 = load.tau2 * (g12 - g2), load.tau1 * g2
    if abs(lhs3 - rhs3) <= _BOUNDARY_REL_TOL * max(lhs3, rhs3):
        return Case.II
    return None


def _require_agreement(what: str, primary: float, alternate: float) -> None:
    if abs(primary - alternate) > _BOUNDARY_VALUE_TOL * max(1.0, abs(primary)):
        raise ConsistencyError(
            f"{what} disagrees across the case boundary: {primary!r} vs {alternate!r}"
        )
