from fractions import Fraction

import pytest

from lmpbisim import (
    EqRelation,
    SetAlgebra,
    SymRelation,
    brute_smallest_stable,
    brute_state_bisim,
    closed_sets,
    event_bisim,
    is_stable,
    is_state_bisim,
    op_G,
    op_O,
    rel_T,
    rel_of_family,
    state_bisim,
    zhou_iterate,
)
from lmpbisim import test_set as threshold_set
from lmpbisim.errors import NotSubAlgebra, NotSymmetric, TooLarge

from fixture_lmps import make_lmp_zero


def eq(carrier, *classes):
    return EqRelation(tuple(carrier), tuple(frozenset(c) for c in classes))


def alg(carrier, *blocks):
    return SetAlgebra(tuple(carrier), tuple(frozenset(b) for b in blocks))


class TestClosedSets:
    def test_closure_merges_exactly_the_class(self):
        got = closed_sets(SetAlgebra.powerset(("1", "2", "3")), eq("123", {"1", "2"}, {"3"}))
        assert got.atoms == (frozenset({"1", "2"}), frozenset({"3"}))

    def test_total_relation_gives_trivial_algebra(self, lmp_a):
        got = closed_sets(lmp_a.sigma, EqRelation.total(lmp_a.states))
        assert got.atoms == (frozenset({"u", "v", "w"}),)

    def test_cross_atom_link_merges_components(self):
        base = alg("1234", {"1", "2"}, {"3", "4"})
        got = closed_sets(base, eq("1234", {"2", "3"}, {"1"}, {"4"}))
        assert got.atoms == (frozenset({"1", "2", "3", "4"}),)

    def test_asymmetric_input_rejected(self):
        with pytest.raises(NotSymmetric):
            SymRelation.from_ordered_pairs(("1", "2"), [("1", "2")])


class TestRelOfFamily:
    def test_one_set(self):
        assert rel_of_family(("1", "2", "3"), [{"1", "2"}]) == eq("123", {"1", "2"}, {"3"})

    def test_empty_family_is_total(self):
        assert rel_of_family(("1", "2", "3"), []) == EqRelation.total(("1", "2", "3"))

    def test_singletons_give_identity(self):
        got = rel_of_family(("1", "2", "3"), [{"1"}, {"2"}])
        assert got == EqRelation.identity(("1", "2", "3"))


class TestRelT:
    def test_distinct_masses_identity(self, lmp_a):
        got = rel_T(lmp_a, SetAlgebra.trivial(lmp_a.states))
        assert got == EqRelation.identity(lmp_a.states)

    def test_zero_kernel_total(self, lmp_zero):
        got = rel_T(lmp_zero, SetAlgebra.trivial(lmp_zero.states))
        assert got == EqRelation.total(lmp_zero.states)

    def test_matching_masses_lump(self, lmp_b):
        got = rel_T(lmp_b, SetAlgebra.trivial(lmp_b.states))
        assert got == eq("uvw", {"u", "v"}, {"w"})

    def test_requires_subalgebra(self, lmp_b):
        with pytest.raises(NotSubAlgebra):
            rel_T(lmp_b, SetAlgebra.powerset(lmp_b.states))


class TestOperators:
    def test_op_o_from_total(self, lmp_a):
        assert op_O(lmp_a, EqRelation.total(lmp_a.states)) == \
            EqRelation.identity(lmp_a.states)

    def test_op_o_zero_kernel_total(self, lmp_zero):
        # a null kernel relates everything, even from the identity
        got = op_O(lmp_zero, EqRelation.identity(lmp_zero.states))
        assert got == EqRelation.total(lmp_zero.states)

    def test_op_g_coarse_seed(self, lmp_b):
        got = op_G(lmp_b, SetAlgebra.trivial(lmp_b.states))
        assert got.atoms == (frozenset({"u", "v"}), frozenset({"w"}))


class TestIsStable:
    def test_trivial_not_stable_when_tests_escape(self, lmp_a):
        assert not is_stable(lmp_a, SetAlgebra.trivial(lmp_a.states))

    def test_full_sigma_always_stable(self, lmp_a, lmp_b):
        assert is_stable(lmp_a, lmp_a.sigma)
        assert is_stable(lmp_b, lmp_b.sigma)

    def test_trivial_stable_on_symmetric_pair(self, lmp_b_prime):
        assert is_stable(lmp_b_prime, SetAlgebra.trivial(lmp_b_prime.states))


class TestIsStateBisim:
    def test_matching_pair(self, lmp_b):
        assert is_state_bisim(lmp_b, SymRelation(lmp_b.states, frozenset({("u", "v")})))

    def test_distinct_masses_fail(self, lmp_a):
        assert not is_state_bisim(lmp_a, SymRelation(lmp_a.states, frozenset({("u", "v")})))

    def test_empty_relation(self, lmp_a):
        assert is_state_bisim(lmp_a, SymRelation(lmp_a.states, frozenset()))

    def test_characterization_via_op_o(self, lmp_b):
        rel = SymRelation(lmp_b.states, frozenset({("u", "v")}))
        assert rel.issubset(op_O(lmp_b, rel)) == is_state_bisim(lmp_b, rel)


class TestBisimilarities:
    def test_event_bisim(self, lmp_a, lmp_b, lmp_b_prime):
        assert event_bisim(lmp_a) == EqRelation.identity(lmp_a.states)
        assert event_bisim(lmp_b_prime) == EqRelation.total(lmp_b_prime.states)
        assert event_bisim(lmp_b) == eq("uvw", {"u", "v"}, {"w"})

    def test_state_bisim(self, lmp_a, lmp_b, lmp_zero):
        assert state_bisim(lmp_a) == EqRelation.identity(lmp_a.states)
        assert state_bisim(lmp_b) == eq("uvw", {"u", "v"}, {"w"})
        assert state_bisim(lmp_zero) == EqRelation.total(lmp_zero.states)


class TestZhouIterate:
    def test_already_fixed(self, lmp_a):
        chain = zhou_iterate(lmp_a)
        assert chain.zhou_index == 0
        assert len(chain.stages) == 1

    def test_coarse_sigma(self, lmp_b):
        assert zhou_iterate(lmp_b).zhou_index == 0

    def test_zero_kernel(self, lmp_zero):
        chain = zhou_iterate(lmp_zero)
        assert chain.zhou_index == 0
        assert chain.stages[0][1] == EqRelation.total(lmp_zero.states)


class TestOracles:
    def test_brute_state_bisim(self, lmp_a, lmp_b, lmp_single):
        assert brute_state_bisim(lmp_b) == eq("uvw", {"u", "v"}, {"w"})
        assert brute_state_bisim(lmp_a) == EqRelation.identity(lmp_a.states)
        assert brute_state_bisim(lmp_single) == EqRelation.total(lmp_single.states)

    def test_brute_smallest_stable(self, lmp_a, lmp_b_prime, lmp_zero):
        assert brute_smallest_stable(lmp_b_prime).atoms == (frozenset({"u", "v"}),)
        assert brute_smallest_stable(lmp_a) == lmp_a.sigma
        assert brute_smallest_stable(lmp_zero).atoms == (frozenset(lmp_zero.states),)

    def test_size_guards(self):
        big = make_lmp_zero(n_states=7)
        with pytest.raises(TooLarge):
            brute_state_bisim(big)
        with pytest.raises(TooLarge):
            brute_smallest_stable(big)


class TestTestSet:
    def test_le_threshold(self, lmp_a):
        got = threshold_set(lmp_a, "a", "<=", Fraction(1, 3), set(lmp_a.states))
        assert got == frozenset({"v", "w"})

    def test_gt_zero(self, lmp_a):
        got = threshold_set(lmp_a, "a", ">", Fraction(0), set(lmp_a.states))
        assert got == frozenset({"u", "v"})

    def test_le_one_is_everything(self, lmp_b):
        got = threshold_set(lmp_b, "a", "<=", Fraction(1), set(lmp_b.states))
        assert got == frozenset(lmp_b.states)
