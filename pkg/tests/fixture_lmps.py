"""Hand-built processes used across the suite.

lmp_a        three states, powerset sigma, kernel masses 1/2 and 1/3 into w
lmp_b        sigma atoms {u,v},{w}; u and v behave identically (valid)
lmp_b_broken like lmp_b but with masses 1/2 vs 1/4, breaking measurability
lmp_b_prime  two states, powerset, each feeding its own singleton with 1/2
lmp_zero     all kernels identically zero
lmp_single   one state, no mass
"""

from fractions import Fraction

from lmpbisim import FiniteLMP, SetAlgebra

Z = Fraction(0)


def _rows(states, entries):
    """entries: state -> {atom_index: value}; one row per state."""
    n = entries.pop("_atoms")
    out = []
    for s in states:
        row = [Z] * n
        for j, v in entries.get(s, {}).items():
            row[j] = Fraction(v)
        out.append(tuple(row))
    return tuple(out)


def make_lmp_a() -> FiniteLMP:
    states = ("u", "v", "w")
    sigma = SetAlgebra.powerset(states)  # atoms: {u}=0 {v}=1 {w}=2
    kernels = {"a": _rows(states, {"_atoms": 3,
                                   "u": {2: "1/2"},
                                   "v": {2: "1/3"}})}
    return FiniteLMP(states, ("a",), sigma, kernels)


def make_lmp_b() -> FiniteLMP:
    states = ("u", "v", "w")
    sigma = SetAlgebra(states, (frozenset({"u", "v"}), frozenset({"w"})))
    kernels = {"a": _rows(states, {"_atoms": 2,
                                   "u": {1: "1/2"},
                                   "v": {1: "1/2"}})}
    return FiniteLMP(states, ("a",), sigma, kernels)


def make_lmp_b_broken() -> FiniteLMP:
    states = ("u", "v", "w")
    sigma = SetAlgebra(states, (frozenset({"u", "v"}), frozenset({"w"})))
    kernels = {"a": _rows(states, {"_atoms": 2,
                                   "u": {1: "1/2"},
                                   "v": {1: "1/4"}})}
    return FiniteLMP(states, ("a",), sigma, kernels)


def make_lmp_b_prime() -> FiniteLMP:
    states = ("u", "v")
    sigma = SetAlgebra.powerset(states)
    kernels = {"a": _rows(states, {"_atoms": 2,
                                   "u": {0: "1/2"},
                                   "v": {1: "1/2"}})}
    return FiniteLMP(states, ("a",), sigma, kernels)


def make_lmp_zero(n_states=3, labels=("a",)) -> FiniteLMP:
    states = tuple(f"s{i}" for i in range(n_states))
    sigma = SetAlgebra.powerset(states)
    kernels = {lab: tuple(tuple(Z for _ in states) for _ in states) for lab in labels}
    return FiniteLMP(states, tuple(labels), sigma, kernels)


def make_lmp_single() -> FiniteLMP:
    return make_lmp_zero(n_states=1)
