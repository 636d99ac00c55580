import random

from lmpbisim import validate_lmp
from lmpbisim.generator import random_lmp, random_subalgebra, random_symmetric_relation


def test_deterministic_for_fixed_seed():
    assert random_lmp(7) == random_lmp(7)
    assert random_lmp(7) != random_lmp(8)


def test_instances_are_valid():
    for seed in range(40):
        lmp = random_lmp(seed)
        assert validate_lmp(lmp) == []
        assert 1 <= len(lmp.states) <= 8


def test_size_bounds_respected():
    for seed in range(30):
        lmp = random_lmp(seed, max_states=5, max_labels=2)
        assert len(lmp.states) <= 5
        assert len(lmp.labels) <= 2


def test_subalgebra_and_relation_helpers():
    rng = random.Random("helper")
    for seed in range(20):
        lmp = random_lmp(seed)
        alg = random_subalgebra(lmp, rng)
        assert lmp.sigma.includes(alg)
        rel = random_symmetric_relation(lmp, rng)
        assert all(p[0] in lmp.states and p[1] in lmp.states for p in rel.pairs)


def test_exercises_non_powerset_sigmas():
    seen_coarse = any(
        len(random_lmp(seed).sigma.atoms) < len(random_lmp(seed).states)
        for seed in range(60))
    assert seen_coarse
