"""Refinement operators, bisimulation predicates, fixpoint chains, oracles.

Conventions, for a fixed finite LMP with ambient algebra Σ:

  closed_sets(Λ, R)   Σ-style closure: the R-closed members of Λ
  rel_of_family(Γ)    membership indistinguishability under the family Γ
  rel_T(Λ)            equal transition mass into every member of Λ
  op_O(R)             rel_T(closed_sets(Σ, R))
  op_G(Λ)             closed_sets(Σ, rel_T(Λ))

All operator outputs are canonical partitions, so chain comparisons are
plain equality.  Every function is pure over immutable inputs and safe to
call concurrently; the two memoized bisimilarities cache frozen values.  The two brute-force oracles re-derive state bisimilarity
and the smallest stable algebra by exhaustive enumeration and exist solely
to referee the fast paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .core import (
    EqRelation,
    FiniteLMP,
    Relation,
    SetAlgebra,
    SymRelation,
    relation_pairs,
)
from .errors import NotSubAlgebra, TooLarge
from .logic import element_value_vectors, logic_sigma
from .rational import ZERO


def _union_find(n: int):
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj

    return find, union


def closed_sets(alg: SetAlgebra, rel: Relation) -> SetAlgebra:
    """Σ(R) relative to `alg`: atoms are the components of alg's atoms under
    the lifted relation "some member of atom i is related to one of atom j".

    A set is in the result iff it is in `alg` and R-closed; both relation
    kinds here are symmetric by construction, which is what makes the
    result closed under complement.
    """
    if tuple(rel.carrier) != alg.carrier:
        raise ValueError("relation and algebra carriers differ")
    atom_of = {}
    for i, a in enumerate(alg.atoms):
        for s in a:
            atom_of[s] = i
    find, union = _union_find(len(alg.atoms))
    for (s, t) in relation_pairs(rel):
        union(atom_of[s], atom_of[t])
    merged: dict[int, set[str]] = {}
    for i, a in enumerate(alg.atoms):
        merged.setdefault(find(i), set()).update(a)
    return SetAlgebra(alg.carrier, tuple(frozenset(b) for b in merged.values()))


def rel_of_family(states: Sequence[str], family: Iterable[Iterable[str]]) -> EqRelation:
    """𝓡(Γ): states are related iff they belong to exactly the same members."""
    states = tuple(states)
    sets = [frozenset(g) for g in family]
    by_vector: dict[tuple[bool, ...], set[str]] = {}
    for s in states:
        vec = tuple(s in g for g in sets)
        by_vector.setdefault(vec, set()).add(s)
    return EqRelation(states, tuple(frozenset(b) for b in by_vector.values()))


def _check_subalgebra(lmp: FiniteLMP, alg: SetAlgebra):
    if alg.carrier != lmp.states or not lmp.sigma.includes(alg):
        raise NotSubAlgebra("algebra is not a sub-σ-algebra of the ambient sigma")


def _atom_measures(lmp: FiniteLMP, alg: SetAlgebra):
    """Per label, per state: the vector of masses into alg's atoms."""
    decomp = [lmp.sigma.decompose(a) for a in alg.atoms]
    out = {}
    for lab in lmp.labels:
        rows = lmp.kernels[lab]
        out[lab] = [tuple(sum((rows[i][j] for j in idx), ZERO) for idx in decomp)
                    for i in range(len(lmp.states))]
    return out

def rel_T(lmp: FiniteLMP, alg: SetAlgebra) -> EqRelation:
    """𝓡ᵀ(Λ): equal mass into every member of Λ, for every label.

    Equality on the atoms of Λ implies equality on all of Λ by additivity,
    so states are grouped by their (label × atom) signature vector.
    """
    _check_subalgebra(lmp, alg)
    measures = _atom_measures(lmp, alg)
    signatures: dict[tuple, set[str]] = {}
    for i, s in enumerate(lmp.states):
        sig = tuple(measures[lab][i] for lab in lmp.labels)
        signatures.setdefault(sig, set()).add(s)
    return EqRelation(lmp.states, tuple(frozenset(b) for b in signatures.values()))


def op_O(lmp: FiniteLMP, rel: Relation) -> EqRelation:
    """𝒪(R) = 𝓡ᵀ(Σ(R))."""
    return rel_T(lmp, closed_sets(lmp.sigma, rel))


def op_G(lmp: FiniteLMP, alg: SetAlgebra) -> SetAlgebra:
    """𝒢(Λ) = Σ(𝓡ᵀ(Λ))."""
    return closed_sets(lmp.sigma, rel_T(lmp, alg))


def test_set(lmp: FiniteLMP, label: str, comparator: str, q: Fraction,
             subset: Iterable[str]) -> frozenset[str]:
    """The threshold set {s : tau_label(s, subset) <comparator> q}."""
    if label not in lmp.labels:
        raise KeyError(label)
    idx = lmp.sigma.decompose(subset)
    ops = {"<": lambda v: v < q, "<=": lambda v: v <= q,
           ">": lambda v: v > q, ">=": lambda v: v >= q}
    try:
        keep = ops[comparator]
    except KeyError:
        raise ValueError(f"comparator must be one of {sorted(ops)}") from None
    rows = lmp.kernels[label]
    return frozenset(s for i, s in enumerate(lmp.states)
                     if keep(sum((rows[i][j] for j in idx), ZERO)))


def is_stable(lmp: FiniteLMP, alg: SetAlgebra) -> bool:
    """Λ is stable iff every attained-threshold test of every A ∈ Λ is in Λ.

    Only the attained values of tau_a(.,A) matter: the test set is constant
    between consecutive attained values.
    """
    _check_subalgebra(lmp, alg)
    vectors = element_value_vectors(lmp, alg.atoms)
    for lab in lmp.labels:
        for vec in vectors[lab]:
            for q in set(vec):
                test = frozenset(s for s, v in zip(lmp.states, vec) if v > q)
                if not alg.contains_set(test):
                    return False
    return True


def is_state_bisim(lmp: FiniteLMP, rel: Relation) -> bool:
    """R is a state bisimulation iff related states give equal mass to every
    R-closed measurable set, equivalently R ⊆ 𝓡ᵀ(Σ(R))."""
    closed = closed_sets(lmp.sigma, rel)
    measures = _atom_measures(lmp, closed)
    for (s, t) in relation_pairs(rel):
        i, j = lmp.state_index(s), lmp.state_index(t)
        for lab in lmp.labels:
            if measures[lab][i] != measures[lab][j]:
                return False
    return True


@lru_cache(maxsize=None)
def event_bisim(lmp: FiniteLMP) -> EqRelation:
    """∼e = 𝓡(σ([[L]])): the atoms of the smallest stable algebra."""
    return rel_of_family(lmp.states, logic_sigma(lmp).atoms)


@lru_cache(maxsize=None)
def state_bisim(lmp: FiniteLMP) -> EqRelation:
    """∼s as the greatest fixpoint of 𝒪, iterated from the total relation."""
    rel = EqRelation.total(lmp.states)
    while True:
        new = op_O(lmp, rel)
        if new == rel:
            return rel
        rel = new


@dataclass(frozen=True)
class ZhouChain:
    """The recorded (R_k, Σ_k) iteration seeded from (∼e, σ([[L]]))."""

    stages: tuple[tuple[int, EqRelation, SetAlgebra], ...]
    terminal: bool
    zhou_index: int


def zhou_iterate(lmp: FiniteLMP) -> ZhouChain:
    """Iterate R ← 𝒪(R), Σ ← 𝒢(Σ) from (∼e, σ([[L]])) to the fixpoint.

    Along the chain the expected laws are asserted outright: R_k = 𝓡ᵀ(Σ_k),
    Σ(R_k) = Σ_{k+1}, R decreasing, Σ increasing.  The zhou_index is checked
    against the independently computed state bisimilarity.
    """
    sigma0 = logic_sigma(lmp)
    rel = event_bisim(lmp)
    alg = sigma0
    stages = [(0, rel, alg)]
    while True:
        assert rel == rel_T(lmp, alg), "chain law R_k = rel_T(Sigma_k) failed"
        next_alg = op_G(lmp, alg)
        assert next_alg == closed_sets(lmp.sigma, rel), \
            "chain law Sigma(R_k) = Sigma_{k+1} failed"
        next_rel = op_O(lmp, rel)
        assert next_rel.refines(rel), "R chain must be non-increasing"
        assert next_alg.includes(alg), "Sigma chain must be non-decreasing"
        if next_rel == rel:
            break
        rel, alg = next_rel, next_alg
        stages.append((len(stages), rel, alg))
    target = state_bisim(lmp)
    zhou_index = next(k for k, r, _ in stages if r == target)
    assert stages[-1][1] == target, "fixpoint of the chain must be state bisimilarity"
    return ZhouChain(tuple(stages), True, zhou_index)


def brute_state_bisim(lmp: FiniteLMP) -> EqRelation:
    """Oracle: enumerate every symmetric relation, keep the bisimulations,
    and return the equivalence generated by their union."""
    n = len(lmp.states)
    if n > 6:
        raise TooLarge(f"{n} states; the brute-force bound is 6")
    pairs = [(lmp.states[i], lmp.states[j]) for i in range(n) for j in range(i + 1, n)]
    union_pairs: set[tuple[str, str]] = set()
    for mask in range(1 << len(pairs)):
        chosen = frozenset(p for k, p in enumerate(pairs) if mask >> k & 1)
        if chosen <= union_pairs and mask:
            continue  # cannot add anything new
        rel = SymRelation(lmp.states, chosen)
        if is_state_bisim(lmp, rel):
            union_pairs |= chosen
    find, union = _union_find(n)
    index = {s: i for i, s in enumerate(lmp.states)}
    for (s, t) in union_pairs:
        union(index[s], index[t])
    classes: dict[int, set[str]] = {}
    for s in lmp.states:
        classes.setdefault(find(index[s]), set()).add(s)
    return EqRelation(lmp.states, tuple(frozenset(c) for c in classes.values()))


def _set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def brute_smallest_stable(lmp: FiniteLMP) -> SetAlgebra:
    """Oracle: enumerate every sub-σ-algebra of sigma (one per partition of
    its atom set), filter by stability, return the ⊆-least one."""
    atoms = lmp.sigma.atoms
    if len(atoms) > 5:
        raise TooLarge(f"{len(atoms)} sigma-atoms; the brute-force bound is 5")
    stable = []
    for part in _set_partitions(range(len(atoms))):
        blocks = tuple(frozenset().union(*(atoms[i] for i in block)) for block in part)
        candidate = SetAlgebra(lmp.states, blocks)
        if is_stable(lmp, candidate):
            stable.append(candidate)
    least = [c for c in stable if all(other.includes(c) for other in stable)]
    assert len(least) == 1, "stable sub-σ-algebras must have a unique least element"
    return least[0]
