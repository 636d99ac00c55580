import pytest

from lmpbisim import ord_parse
from lmpbisim.errors import (
    NotLimit,
    NotSuccessorZhou,
    OrdinalOutOfRange,
)
from lmpbisim.symbolic import (
    FiberRel,
    FiberSigma,
    MeasurePair,
    amalgamate,
    build_S,
    build_U,
    fiber_identity_stage,
    fiber_unveil_stage,
    membership_rel_gap,
    limit_stage_coherent,
    serial_sum,
    stage_stability_gaps,
    sym_stage,
    sym_step,
    sym_zhou,
)

O = ord_parse


class TestMeasurePair:
    def test_valid(self):
        MeasurePair("1/3", "2/3")

    def test_must_disagree(self):
        with pytest.raises(ValueError):
            MeasurePair("1/2", "1/2")

    def test_open_interval(self):
        with pytest.raises(ValueError):
            MeasurePair("0", "1/2")
        with pytest.raises(ValueError):
            MeasurePair("1/2", "1")


class TestDescriptors:
    def test_cuts_normalization(self):
        assert FiberSigma.cuts(()) == FiberSigma.trivial()
        assert FiberRel.cuts_rel(()) == FiberRel.total()

    def test_finite_cuts_never_identity(self):
        assert FiberRel.cuts_rel(range(1000)).tag.value == "CutsRel"

    def test_lattice_order(self):
        assert FiberSigma.trivial().leq(FiberSigma.cuts({1}))
        assert FiberSigma.cuts({1}).leq(FiberSigma.cuts({1, 2}))
        assert not FiberSigma.cuts({1}).leq(FiberSigma.cuts({2}))
        assert FiberSigma.cuts({1, 5}).leq(FiberSigma.borel())
        assert FiberSigma.borel().leq(FiberSigma.borel_v())
        assert FiberRel.identity().refines(FiberRel.cuts_rel({3}))
        assert FiberRel.cuts_rel({3, 4}).refines(FiberRel.cuts_rel({3}))
        assert FiberRel.cuts_rel({3}).refines(FiberRel.total())


class TestProcU:
    def test_zhou_is_one(self):
        assert sym_zhou(build_U()) == O("1")

    def test_stage_zero(self):
        st = sym_stage(build_U(), O("0"))
        assert st.sigma(("interval",)) == FiberSigma.borel()
        assert st.pair_related() is True

    def test_stage_one_pair_splits(self):
        st = sym_stage(build_U(), O("1"))
        assert st.sigma(("interval",)) == FiberSigma.borel_v()
        assert st.pair_related() is False

    def test_step_matches(self):
        st0 = sym_stage(build_U(), O("0"))
        st1 = sym_step(build_U(), st0)
        assert st1.stage == O("1")
        assert st1.pair_related() is False


class TestProcS:
    def test_zero_beta_rejected(self):
        with pytest.raises(OrdinalOutOfRange):
            build_S(O("0"))

    def test_single_fiber(self):
        assert sym_zhou(build_S(O("1"))) == O("0")

    def test_identity_stages_match_fiber_index(self):
        for text in ("0", "1", "5", "w", "w+3", "w*2", "w^2", "w^2+w+1"):
            assert fiber_identity_stage(O(text)) == O(text)
            assert fiber_unveil_stage(O(text)) == O(text).succ()

    def test_stage_zero_of_s_omega(self):
        st = sym_stage(build_S(O("w")), O("0"))
        assert st.rel(("fiber", O("0"))) == FiberRel.identity()
        for k in ("1", "2", "3"):
            assert st.rel(("fiber", O(k))) == FiberRel.total()

    def test_stage_one_of_s_omega(self):
        st = sym_stage(build_S(O("w")), O("1"))
        assert st.sigma(("fiber", O("0"))) == FiberSigma.borel_v()
        for k in ("1", "2", "3"):
            assert st.sigma(("fiber", O(k))).leq(FiberSigma.borel())

    def test_limit_fiber_cut_accumulation(self):
        proc = build_S(O("w^2"))
        # fiber w reads targets 1,2,3,...; target k unveils at stage k+1
        st = sym_stage(proc, O("4"), fibers=[("fiber", O("w"))])
        assert st.rel(("fiber", O("w"))) == FiberRel.cuts_rel({0, 1, 2})
        assert st.sigma(("fiber", O("w"))) == FiberSigma.cuts({0, 1})

    def test_limit_fiber_borel_at_own_stage(self):
        proc = build_S(O("w^2"))
        st = sym_stage(proc, O("w"), fibers=[("fiber", O("w"))])
        assert st.sigma(("fiber", O("w"))) == FiberSigma.borel()
        assert st.rel(("fiber", O("w"))) == FiberRel.identity()

    def test_zhou_values(self):
        for beta, expected in [("2", "1"), ("3", "2"), ("5", "4"),
                               ("w", "w"), ("w+1", "w"), ("w*2", "w*2"),
                               ("w^2", "w^2"), ("w^2+w", "w^2+w")]:
            assert sym_zhou(build_S(O(beta))) == O(expected)

    def test_steps_verify_through_limit_fiber(self):
        proc = build_S(O("w+1"))
        st = sym_stage(proc, O("0"))
        for _ in range(4):
            st = sym_step(proc, st)
        assert st.stage == O("4")

    def test_monotone_stages(self):
        proc = build_S(O("w*2"))
        stages = [O("0"), O("1"), O("3"), O("w"), O("w+1"), O("w+5"), O("w*2")]
        keys = proc.fiber_sample(None)
        snaps = [sym_stage(proc, s, keys) for s in stages]
        for earlier, later in zip(snaps, snaps[1:]):
            for (k1, s1, r1), (k2, s2, r2) in zip(earlier.entries, later.entries):
                assert s1.leq(s2)
                assert r2.refines(r1)


class TestAmalgam:
    def test_requires_successor_zhou(self):
        with pytest.raises(NotSuccessorZhou):
            amalgamate(build_S(O("w")))
        with pytest.raises(NotSuccessorZhou):
            amalgamate(build_S(O("1")))  # Zhou ordinal 0 is not a successor

    def test_zhou_bumps_by_one(self):
        assert sym_zhou(amalgamate(build_S(O("2")))) >= O("2")
        assert sym_zhou(amalgamate(build_S(O("3")))) >= O("3")
        assert sym_zhou(amalgamate(build_U())) == O("2")

    def test_iterated_amalgam(self):
        # each amalgamation lifts the Zhou ordinal by exactly one
        proc = amalgamate(amalgamate(build_S(O("2"))))
        assert sym_zhou(proc) == O("3")

    def test_witness_reporting(self):
        proc = amalgamate(build_S(O("3")))
        text = proc.witness()
        assert "fiber 2" in text and "stage 2" in text and "fiber 1" in text

    def test_interval_fiber_timeline(self):
        proc = amalgamate(build_S(O("3")))  # inner Zhou ordinal 2
        key = ("interval",)
        assert sym_stage(proc, O("1"), [key]).rel(key) == FiberRel.total()
        assert sym_stage(proc, O("2"), [key]).rel(key) == FiberRel.identity()
        assert sym_stage(proc, O("2"), [key]).sigma(key) == FiberSigma.trivial()
        assert sym_stage(proc, O("3"), [key]).sigma(key) == FiberSigma.borel_v()
        assert sym_stage(proc, O("2"), [key]).pair_related() is True
        assert sym_stage(proc, O("3"), [key]).pair_related() is False

    def test_steps_verify(self):
        proc = amalgamate(build_S(O("2")))
        st = sym_stage(proc, O("0"))
        for _ in range(3):
            st = sym_step(proc, st)
        assert st.pair_related() is False


class TestSerialSum:
    def test_requires_limit(self):
        with pytest.raises(NotLimit):
            serial_sum(O("5"))

    def test_zhou_exceeds_limit(self):
        assert sym_zhou(serial_sum(O("w"))) == O("w+1")
        assert sym_zhou(serial_sum(O("w^2"))) == O("w^2+1")

    def test_interval_cuts_activate_serially(self):
        proc = serial_sum(O("w"))  # summand Zhou ordinals 1, 2, 3, ...
        key = ("interval",)
        assert sym_stage(proc, O("1"), [key]).sigma(key) == FiberSigma.trivial()
        assert sym_stage(proc, O("2"), [key]).sigma(key) == FiberSigma.cuts({0})
        assert sym_stage(proc, O("4"), [key]).sigma(key) == FiberSigma.cuts({0, 1, 2})
        assert sym_stage(proc, O("1"), [key]).rel(key) == FiberRel.cuts_rel({0})

    def test_interval_descriptor_at_given_stage(self):
        # summands have Zhou ordinals w, w*2, w*3, ...; below stage w*2 only
        # the first witness set is available
        proc = serial_sum(O("w^2"))
        key = ("interval",)
        assert sym_stage(proc, O("w*2"), [key]).sigma(key) == FiberSigma.cuts({0})

    def test_borel_exactly_at_limit(self):
        proc = serial_sum(O("w"))
        key = ("interval",)
        assert sym_stage(proc, O("w"), [key]).sigma(key) == FiberSigma.borel()
        assert sym_stage(proc, O("w"), [key]).rel(key) == FiberRel.identity()
        assert sym_stage(proc, O("w"), [key]).pair_related() is True
        assert sym_stage(proc, O("w+1"), [key]).pair_related() is False

    def test_amalgam_of_serial_sum(self):
        proc = amalgamate(serial_sum(O("w")))
        assert sym_zhou(proc) == O("w+2")


class TestLawChecks:
    def test_membership_gap_at_successor_stage(self):
        proc = build_S(O("w"))
        assert membership_rel_gap(proc, O("1"))  # fiber 1: R identity, sigma trivial
        assert not membership_rel_gap(proc, O("0"))

    def test_no_membership_gap_at_limit(self):
        proc = build_S(O("w*2"))
        assert not membership_rel_gap(proc, O("w"))

    def test_stability_at_limits_not_at_successors(self):
        proc = build_S(O("w*2"))
        assert not stage_stability_gaps(proc, O("0"))
        assert not stage_stability_gaps(proc, O("w"))
        assert stage_stability_gaps(proc, O("3"))

    def test_limit_coherence(self):
        proc = build_S(O("w*2+1"))
        assert limit_stage_coherent(proc, O("w"), 30)
        assert limit_stage_coherent(proc, O("w*2"), 30)


class TestCrossEngineDiscretization:
    def test_scaling_kernel_grid(self):
        # finite discretizations of the single scaling fiber: k grid points
        # with distinct masses, hence identity relations at stages 0 and 1
        from fractions import Fraction
        from lmpbisim import EqRelation, FiniteLMP, SetAlgebra, event_bisim, state_bisim, zhou_iterate
        proc = build_S(O("1"))
        assert sym_stage(proc, O("0")).rel(("fiber", O("0"))) == FiberRel.identity()
        assert sym_stage(proc, O("1")).rel(("fiber", O("0"))) == FiberRel.identity()
        for k in (2, 5, 10):
            states = tuple(f"g{i}" for i in range(k))
            sigma = SetAlgebra.powerset(states)
            rows = tuple(
                tuple(Fraction(i + 1, k + 1) * Fraction(1, k) for _ in states)
                for i in range(k))
            lmp = FiniteLMP(states, ("n",), sigma, {"n": rows})
            assert event_bisim(lmp) == EqRelation.identity(states)
            assert state_bisim(lmp) == EqRelation.identity(states)
            assert zhou_iterate(lmp).zhou_index == 0


class TestStepWalks:
    def test_serial_sum_step_walk(self):
        proc = serial_sum(O("w"))
        st = sym_stage(proc, O("0"))
        for _ in range(5):
            st = sym_step(proc, st)
        assert st.stage == O("5")
        assert st.sigma(("interval",)) == FiberSigma.cuts({0, 1, 2, 3})

    def test_step_on_partial_fiber_sample(self):
        proc = serial_sum(O("w"))
        st = sym_stage(proc, O("0"), fibers=[("summand", 0, "fiber", O("0"))])
        assert sym_step(proc, st).stage == O("1")

    def test_amalgam_trace_includes_inner_and_gadgets(self):
        proc = amalgamate(build_U())
        st = sym_stage(proc, O("1"))
        lines = "\n".join(st.render_lines())
        assert "inner fiber I" in lines
        assert "inner pair (s,t): split" in lines
        assert "pair (s,t): related" in lines
