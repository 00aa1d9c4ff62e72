import numpy as np
import pytest

from macct import (
    ChannelConfig,
    CompletionTimePair,
    InfeasibleError,
    Phase,
    RatePair,
    Schedule,
    TrafficLoad,
    build_region,
    compose,
    ct_contains,
    gamma,
    synthesize,
    validate,
)
from refvals import (
    ABAR_II,
    CBAR_II,
    CFG33,
    LOAD_II,
    REFERENCE_INSTANCES,
    random_instance,
    sample_members,
)


class TestSynthesize:
    def test_two_phase_boundary_pair(self):
        d = CompletionTimePair(*ABAR_II)
        s = synthesize(CFG33, LOAD_II, d)
        assert len(s.phases) == 2
        shared, solo = s.phases
        assert shared.duration == pytest.approx(1.0, abs=1e-12)
        assert shared.active_users == {1, 2}
        assert shared.rates.as_tuple() == pytest.approx(
            (0.40367746102880205, 1.0), rel=1e-12
        )
        assert solo.duration == pytest.approx(ABAR_II[0] - 1.0, rel=1e-12)
        assert solo.active_users == {1}
        assert solo.rates.as_tuple() == pytest.approx((1.0, 0.0), abs=1e-12)
        # bit conservation, by hand
        assert shared.duration * shared.rates.r1 + solo.duration * solo.rates.r1 == (
            pytest.approx(1.0, abs=1e-12)
        )

    def test_single_phase_on_diagonal(self):
        d = CompletionTimePair(CBAR_II, CBAR_II)
        s = synthesize(CFG33, LOAD_II, d)
        assert len(s.phases) == 1
        (phase,) = s.phases
        assert phase.active_users == {1, 2}
        assert phase.rates.as_tuple() == pytest.approx(
            (0.701838730514401, 0.701838730514401), rel=1e-12
        )

    def test_interior_point_solo_saturates(self):
        s = synthesize(CFG33, LOAD_II, CompletionTimePair(2.0, 3.0))
        shared, solo = s.phases
        assert shared.duration == 2.0
        assert shared.rates.as_tuple() == pytest.approx((0.5, 0.0), abs=1e-12)
        assert solo.duration == pytest.approx(1.0, abs=1e-12)
        assert solo.active_users == {2}
        assert solo.rates.r2 == pytest.approx(1.0, abs=1e-12)
        assert 2.0 * shared.rates.r2 + 1.0 * solo.rates.r2 == pytest.approx(
            1.0, abs=1e-12
        )

    def test_infeasible_rejected_naming_constraint(self):
        with pytest.raises(InfeasibleError, match="sum_rate"):
            synthesize(CFG33, LOAD_II, CompletionTimePair(1.3, 1.3))

    def test_round_trip_random_members(self):
        rng = np.random.default_rng(41)
        for _, cfg, load in REFERENCE_INSTANCES:
            for d in sample_members(rng, cfg, load, 100):
                report = validate(cfg, load, synthesize(cfg, load, d))
                assert report.ok, report.violations

    def test_boundary_vertices_give_pentagon_tight_phases(self):
        for _, cfg, load in REFERENCE_INSTANCES:
            desc = build_region(cfg, load)
            g1, g2 = gamma(cfg.p1), gamma(cfg.p2)
            g12 = gamma(cfg.p1 + cfg.p2)
            for _, piece in desc.pieces:
                for label, (x, y) in piece.vertices:
                    s = synthesize(cfg, load, CompletionTimePair(x, y))
                    shared = s.phases[0]
                    r1, r2 = shared.rates.as_tuple()
                    tight = min(
                        abs(g1 - r1), abs(g2 - r2), abs(g12 - r1 - r2)
                    )
                    assert tight <= 1e-9, (label, shared)

    def test_upward_closure(self):
        rng = np.random.default_rng(42)
        for d in sample_members(rng, CFG33, LOAD_II, 50):
            bumped = CompletionTimePair(
                d.d1 + rng.uniform(0.0, 0.5), d.d2 + rng.uniform(0.0, 0.5)
            )
            report = validate(CFG33, LOAD_II, synthesize(CFG33, LOAD_II, bumped))
            assert report.ok


class TestCompose:
    def test_convex_combination_of_achieved_pairs(self):
        s = synthesize(CFG33, LOAD_II, CompletionTimePair(1.0, ABAR_II[0]))
        s_prime = synthesize(CFG33, LOAD_II, CompletionTimePair(CBAR_II, CBAR_II))
        out = compose(s, s_prime, 0.5)
        assert out.achieved.d1 == pytest.approx(0.5 * (1.0 + CBAR_II), abs=1e-12)
        assert out.achieved.d2 == pytest.approx(0.5 * (ABAR_II[0] + CBAR_II), abs=1e-12)
        report = validate(CFG33, LOAD_II, out)
        assert report.ok, report.violations

    def test_alpha_one_is_identity(self):
        s = synthesize(CFG33, LOAD_II, CompletionTimePair(1.2, 1.8))
        s_prime = synthesize(CFG33, LOAD_II, CompletionTimePair(1.5, 1.5))
        out = compose(s, s_prime, 1.0)
        assert out.achieved == s.achieved
        assert [p.rates for p in out.phases] == [p.rates for p in s.phases]

    def test_opposite_sides_rejected(self):
        s = synthesize(CFG33, LOAD_II, CompletionTimePair(1.2, 1.8))
        s_prime = synthesize(CFG33, LOAD_II, CompletionTimePair(1.8, 1.2))
        with pytest.raises(ValueError, match="opposite sides"):
            compose(s, s_prime, 0.5)

    def test_closure_under_composition(self):
        rng = np.random.default_rng(43)
        for _, cfg, load in REFERENCE_INSTANCES:
            for side in ("d1<=d2", "d1>=d2"):
                members = sample_members(rng, cfg, load, 12, side)
                for _ in range(20):
                    i, j = rng.choice(len(members), size=2)
                    alpha = float(rng.uniform(0.0, 1.0))
                    out = compose(
                        synthesize(cfg, load, members[i]),
                        synthesize(cfg, load, members[j]),
                        alpha,
                    )
                    assert validate(cfg, load, out).ok
                    assert ct_contains(cfg, load, out.achieved)

    def test_composed_compose_again(self):
        rng = np.random.default_rng(44)
        members = sample_members(rng, CFG33, LOAD_II, 3, "d1<=d2")
        schedules = [synthesize(CFG33, LOAD_II, d) for d in members]
        once = compose(schedules[0], schedules[1], 0.3)
        twice = compose(once, schedules[2], 0.6)
        assert validate(CFG33, LOAD_II, twice).ok


class TestValidate:
    def test_detects_pentagon_violation(self):
        bad = Schedule(
            phases=(Phase(1.0, RatePair(1.0, 1.0), frozenset({1, 2})),),
            achieved=CompletionTimePair(1.0, 1.0),
        )
        report = validate(CFG33, TrafficLoad(1.0, 1.0), bad)
        assert not report.ok
        assert any("pentagon" in v for v in report.violations)

    def test_detects_missing_bits(self):
        d = CompletionTimePair(*ABAR_II)
        s = synthesize(CFG33, LOAD_II, d)
        short = Schedule(
            phases=(
                s.phases[0],
                Phase(
                    s.phases[1].duration,
                    RatePair(s.phases[1].rates.r1 * 0.9, 0.0),
                    frozenset({1}),
                ),
            ),
            achieved=d,
        )
        report = validate(CFG33, LOAD_II, short)
        assert any("bits" in v for v in report.violations)

    def test_detects_non_contiguous_activity(self):
        gap = Schedule(
            phases=(
                Phase(0.5, RatePair(1.0, 0.0), frozenset({1})),
                Phase(0.5, RatePair(0.0, 1.0), frozenset({2})),
                Phase(0.5, RatePair(1.0, 0.0), frozenset({1})),
            ),
            achieved=CompletionTimePair(1.5, 1.0),
        )
        report = validate(CFG33, TrafficLoad(1.0, 0.5), gap)
        assert any("initial run" in v for v in report.violations)

    def test_detects_infeasible_achieved_pair(self):
        bad = Schedule(
            phases=(Phase(1.3, RatePair(1.0 / 1.3, 1.0 / 1.3), frozenset({1, 2})),),
            achieved=CompletionTimePair(1.3, 1.3),
        )
        report = validate(CFG33, LOAD_II, bad)
        assert any("not in the region" in v for v in report.violations)

    def test_detects_solo_rate_above_capacity(self):
        bad = Schedule(
            phases=(
                Phase(1.0, RatePair(0.5, 0.9), frozenset({1, 2})),
                Phase(0.5, RatePair(1.0, 0.0), frozenset({1})),
                Phase(0.25, RatePair(1.2, 0.0), frozenset({1})),
            ),
            achieved=CompletionTimePair(1.75, 1.0),
        )
        report = validate(ChannelConfig(3, 3), TrafficLoad(1.3, 0.9), bad)
        assert any("capacity" in v for v in report.violations)

    def test_deadline_mismatch_detected(self):
        d = CompletionTimePair(*ABAR_II)
        s = synthesize(CFG33, LOAD_II, d)
        wrong = Schedule(phases=s.phases, achieved=CompletionTimePair(d.d1 + 0.5, d.d2))
        report = validate(CFG33, LOAD_II, wrong)
        assert any("ends at" in v for v in report.violations)


def test_phase_invariants_enforced_at_construction():
    with pytest.raises(ValueError):
        Phase(-0.1, RatePair(0.1, 0.1), frozenset({1, 2}))
    with pytest.raises(ValueError):
        Phase(1.0, RatePair(0.1, 0.1), frozenset({1}))  # inactive user 2 with rate
    with pytest.raises(ValueError):
        Phase(1.0, RatePair(0.0, 0.1), frozenset({3}))


def test_random_instances_round_trip():
    rng = np.random.default_rng(45)
    for _ in range(10):
        cfg, load = random_instance(rng)
        for d in sample_members(rng, cfg, load, 20):
            s = synthesize(cfg, load, d)
            report = validate(cfg, load, s)
            assert report.ok, (cfg, load, d, report.violations)
