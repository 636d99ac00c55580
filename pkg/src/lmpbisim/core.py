"""Finite labelled Markov processes with explicit sub-σ-algebras.

A finite σ-algebra is determined by its atoms, so algebras are stored as
partitions of the state set. Markov kernels are stored per (state, atom)
with exact rational entries; the measure of any measurable set follows by
additivity. Every value type here is immutable and safely shareable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    CapacityExceeded,
    CarrierOverlap,
    NotSymmetric,
    SetNotMeasurable,
)
from .rational import ZERO, format_rational

# Enumerating all elements of an algebra is capped at 2^20 sets.
ELEMENT_CAP_BITS = 20


def _canonical_blocks(carrier, blocks):
    """Order blocks by smallest member under carrier order; freeze them."""
    pos = {s: i for i, s in enumerate(carrier)}
    frozen = [frozenset(b) for b in blocks]
    for b in frozen:
        if not b:
            raise ValueError("empty block in partition")
        for s in b:
            if s not in pos:
                raise ValueError(f"block member {s!r} not in carrier")
    frozen.sort(key=lambda b: min(pos[s] for s in b))
    return tuple(frozen)


def _check_partition(carrier, blocks, what):
    seen = set()
    for b in blocks:
        if b & seen:
            raise ValueError(f"{what}: blocks overlap on {sorted(b & seen)}")
        seen |= b
    if seen != set(carrier):
        missing = set(carrier) - seen
        raise ValueError(f"{what}: blocks do not cover {sorted(missing)}")


@dataclass(frozen=True)
class SetAlgebra:
    """A finite σ-algebra over an ordered carrier, given by its atoms.

    A subset belongs to the algebra iff it is a union of atoms.  The empty
    carrier (zero atoms) is allowed; it only arises from restrictions.
    """

    carrier: tuple[str, ...]
    atoms: tuple[frozenset[str], ...]

    def __post_init__(self):
        if len(set(self.carrier)) != len(self.carrier):
            raise ValueError("carrier has duplicate states")
        _check_partition(self.carrier, self.atoms, "SetAlgebra")
        object.__setattr__(self, "atoms", _canonical_blocks(self.carrier, self.atoms))

    @staticmethod
    def trivial(carrier: Sequence[str]) -> "SetAlgebra":
        carrier = tuple(carrier)
        atoms = (frozenset(carrier),) if carrier else ()
        return SetAlgebra(carrier, atoms)

    @staticmethod
    def powerset(carrier: Sequence[str]) -> "SetAlgebra":
        carrier = tuple(carrier)
        return SetAlgebra(carrier, tuple(frozenset({s}) for s in carrier))

    def atom_of(self, state: str) -> int:
        for i, a in enumerate(self.atoms):
            if state in a:
                return i
        raise KeyError(state)

    def contains_set(self, subset: Iterable[str]) -> bool:
        subset = frozenset(subset)
        if not subset <= set(self.carrier):
            return False
        covered = frozenset()
        for a in self.atoms:
            inter = a & subset
            if inter and inter != a:
                return False
            covered |= inter
        return covered == subset

    def decompose(self, subset: Iterable[str]) -> tuple[int, ...]:
        """Indices of the atoms whose union is `subset`."""
        subset = frozenset(subset)
        idx = tuple(i for i, a in enumerate(self.atoms) if a and a <= subset)
        union = frozenset().union(*(self.atoms[i] for i in idx)) if idx else frozenset()
        if union != subset:
            raise SetNotMeasurable(f"set {sorted(subset)} is not a union of atoms")
        return idx

    def elements(self):
        """All members of the algebra, as frozensets (2^#atoms of them)."""
        n = len(self.atoms)
        if n > ELEMENT_CAP_BITS:
            raise CapacityExceeded(f"algebra has 2^{n} elements, cap is 2^{ELEMENT_CAP_BITS}")
        for mask in range(1 << n):
            yield frozenset().union(*(self.atoms[i] for i in range(n) if mask >> i & 1)) \
                if mask else frozenset()

    def includes(self, other: "SetAlgebra") -> bool:
        """Algebra inclusion: other ⊆ self iff every atom of `other` is a
        union of atoms of `self`."""
        if self.carrier != other.carrier:
            return False
        return all(self.contains_set(a) for a in other.atoms)


@dataclass(frozen=True)
class EqRelation:
    """An equivalence relation, stored as its partition into classes."""

    carrier: tuple[str, ...]
    classes: tuple[frozenset[str], ...]

    def __post_init__(self):
        _check_partition(self.carrier, self.classes, "EqRelation")
        object.__setattr__(self, "classes", _canonical_blocks(self.carrier, self.classes))

    @staticmethod
    def total(carrier: Sequence[str]) -> "EqRelation":
        carrier = tuple(carrier)
        classes = (frozenset(carrier),) if carrier else ()
        return EqRelation(carrier, classes)

    @staticmethod
    def identity(carrier: Sequence[str]) -> "EqRelation":
        carrier = tuple(carrier)
        return EqRelation(carrier, tuple(frozenset({s}) for s in carrier))

    def class_of(self, state: str) -> frozenset[str]:
        for c in self.classes:
            if state in c:
                return c
        raise KeyError(state)

    def related(self, s: str, t: str) -> bool:
        return t in self.class_of(s)

    def refines(self, other: "EqRelation") -> bool:
        """self ⊆ other as sets of pairs: every class fits in an other-class."""
        return all(any(c <= d for d in other.classes) for c in self.classes)

    def pairs(self) -> frozenset[tuple[str, str]]:
        """All related pairs with s != t, canonically ordered within the pair."""
        pos = {s: i for i, s in enumerate(self.carrier)}
        out = set()
        for c in self.classes:
            members = sorted(c, key=pos.__getitem__)
            for i, s in enumerate(members):
                for t in members[i + 1:]:
                    out.add((s, t))
        return frozenset(out)

    def as_sym(self) -> "SymRelation":
        return SymRelation(self.carrier, self.pairs())


@dataclass(frozen=True)
class SymRelation:
    """An arbitrary symmetric relation, stored as unordered state pairs.

    Pairs are kept with endpoints in carrier order; reflexive pairs may be
    stored explicitly but never change any operator's result.
    """

    carrier: tuple[str, ...]
    pairs: frozenset[tuple[str, str]]

    def __post_init__(self):
        pos = {s: i for i, s in enumerate(self.carrier)}
        canon = set()
        for p in self.pairs:
            s, t = p
            if s not in pos or t not in pos:
                raise ValueError(f"pair {p!r} not inside carrier")
            canon.add((s, t) if pos[s] <= pos[t] else (t, s))
        object.__setattr__(self, "pairs", frozenset(canon))

    @staticmethod
    def from_ordered_pairs(carrier, pairs) -> "SymRelation":
        """Build from ordered pairs, demanding symmetry of the input."""
        given = set(pairs)
        for (s, t) in given:
            if s != t and (t, s) not in given:
                raise NotSymmetric(f"pair ({s},{t}) present without ({t},{s})")
        return SymRelation(tuple(carrier), frozenset(given))

    def related(self, s: str, t: str) -> bool:
        return (s, t) in self.pairs or (t, s) in self.pairs

    def issubset(self, other: "SymRelation | EqRelation") -> bool:
        if isinstance(other, EqRelation):
            return all(other.related(s, t) for s, t in self.pairs)
        return self.pairs <= other.pairs


Relation = EqRelation | SymRelation


def relation_pairs(rel: Relation) -> frozenset[tuple[str, str]]:
    """Uniform pair view (irreflexive part) of either relation kind."""
    if isinstance(rel, EqRelation):
        return rel.pairs()
    return frozenset((s, t) for s, t in rel.pairs if s != t)


@dataclass(frozen=True)
class ValidationIssue:
    kind: str  # "subprobability" | "measurability"
    label: str
    where: str  # state name, or a rendered atom for measurability issues
    detail: str

    def render(self) -> str:
        return f"{self.kind}: label {self.label}, {self.where}: {self.detail}"


@dataclass(frozen=True)
class FiniteLMP:
    """(S, Σ, {τ_a}) with S finite, Σ given by atoms, τ stored per atom.

    `kernels[label][i][j]` is the mass state `states[i]` sends into atom
    `sigma.atoms[j]` under `label`.  Structural well-formedness is enforced
    here; the semantic laws (subprobability rows, kernel measurability) are
    checked by `validate_lmp` and reported rather than raised.
    """

    states: tuple[str, ...]
    labels: tuple[str, ...]
    sigma: SetAlgebra
    kernels: Mapping[str, tuple[tuple[Fraction, ...], ...]] = field(hash=False)

    def __post_init__(self):
        if not self.states:
            raise ValueError("empty state set is rejected")
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate states")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")
        if self.sigma.carrier != self.states:
            raise ValueError("sigma carrier does not match the state list")
        frozen = {}
        for a in self.labels:
            rows = self.kernels.get(a)
            if rows is None:
                raise ValueError(f"missing kernel for label {a!r}")
            rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
            if len(rows) != len(self.states):
                raise ValueError(f"kernel for {a!r} must have one row per state")
            for row in rows:
                if len(row) != len(self.sigma.atoms):
                    raise ValueError(f"kernel rows for {a!r} must have one entry per atom")
                for x in row:
                    if x < ZERO:
                        raise ValueError(f"kernel entry {format_rational(x)} is negative")
            frozen[a] = rows
        if set(self.kernels) - set(self.labels):
            raise ValueError("kernel given for unknown label")
        object.__setattr__(self, "kernels", frozen)

    def __hash__(self):
        return hash((self.states, self.labels, self.sigma,
                     tuple(sorted((a, self.kernels[a]) for a in self.labels))))

    def __eq__(self, other):
        if not isinstance(other, FiniteLMP):
            return NotImplemented
        return (self.states, self.labels, self.sigma) == (other.states, other.labels, other.sigma) \
            and all(self.kernels[a] == other.kernels[a] for a in self.labels)

    def state_index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise KeyError(state) from None

    def tau_atom(self, label: str, state: str, atom_index: int) -> Fraction:
        return self.kernels[label][self.state_index(state)][atom_index]


def validate_lmp(lmp: FiniteLMP) -> list[ValidationIssue]:
    """Report every subprobability and measurability violation; [] = valid."""
    issues = []
    n_atoms = len(lmp.sigma.atoms)
    for a in lmp.labels:
        rows = lmp.kernels[a]
        for s, row in zip(lmp.states, rows):
            total = sum(row, ZERO)
            if total > 1 or any(x > 1 for x in row):
                issues.append(ValidationIssue(
                    "subprobability", a, f"state {s}",
                    f"row sum {format_rational(total)} exceeds 1" if total > 1
                    else "an entry exceeds 1"))
        # tau_a(., A) must be constant on every sigma-atom, for every atom A
        for j in range(n_atoms):
            for block in lmp.sigma.atoms:
                vals = {rows[lmp.state_index(s)][j] for s in block}
                if len(vals) > 1:
                    issues.append(ValidationIssue(
                        "measurability", a,
                        f"atom {render_set(block)}",
                        f"tau(.,{render_set(lmp.sigma.atoms[j])}) is not constant "
                        f"({', '.join(sorted(format_rational(v) for v in vals))})"))
    return issues


def render_set(subset: Iterable[str]) -> str:
    return "{" + ",".join(sorted(subset)) + "}"


def measure_of(lmp: FiniteLMP, label: str, state: str, subset: Iterable[str]) -> Fraction:
    """τ_label(state, subset) for a measurable subset (union of atoms)."""
    if label not in lmp.labels:
        raise KeyError(label)
    idx = lmp.sigma.decompose(subset)
    row = lmp.kernels[label][lmp.state_index(state)]
    return sum((row[i] for i in idx), ZERO)


def sigma_generate(states: Sequence[str], generators: Iterable[Iterable[str]]) -> SetAlgebra:
    """σ(generators): atoms are the membership-vector classes of the states.

    Two states land in the same atom iff they belong to exactly the same
    generators; in the finite case this partition generates the least
    σ-algebra containing every generator.
    """
    states = tuple(states)
    gens = [frozenset(g) for g in generators]
    for g in gens:
        if not g <= set(states):
            raise ValueError(f"generator {sorted(g)} not a subset of the states")
    by_vector: dict[tuple[bool, ...], set[str]] = {}
    for s in states:
        vec = tuple(s in g for g in gens)
        by_vector.setdefault(vec, set()).add(s)
    return SetAlgebra(states, tuple(frozenset(b) for b in by_vector.values()))


def is_in_algebra(alg: SetAlgebra, subset: Iterable[str]) -> bool:
    return alg.contains_set(subset)


def sum_with_space(lmp: FiniteLMP, extra: SetAlgebra) -> FiniteLMP:
    """Direct sum S ⊕ S̄ with Σ ⊕ Σ̄; τ'_a(s,A) = τ_a(s, A ∩ S), 0 from S̄."""
    overlap = set(lmp.states) & set(extra.carrier)
    if overlap:
        raise CarrierOverlap(f"states shared with the extra space: {sorted(overlap)}")
    states = lmp.states + extra.carrier
    sigma = SetAlgebra(states, lmp.sigma.atoms + extra.atoms)
    # Reindex: the sum's canonical atom order may interleave.
    old_atom_target = {a: lmp.sigma.atoms.index(a) for a in lmp.sigma.atoms}
    kernels = {}
    for lab in lmp.labels:
        rows = []
        for s in states:
            if s in lmp.states:
                old_row = lmp.kernels[lab][lmp.state_index(s)]
                row = tuple(old_row[old_atom_target[a]] if a in old_atom_target else ZERO
                            for a in sigma.atoms)
            else:
                row = tuple(ZERO for _ in sigma.atoms)
            rows.append(row)
        kernels[lab] = tuple(rows)
    return FiniteLMP(states, lmp.labels, sigma, kernels)


def restrict_algebra(alg: SetAlgebra, subset: Iterable[str]) -> SetAlgebra:
    """Σ↾Y: atoms are the nonempty traces of the atoms on Y."""
    subset = frozenset(subset)
    if not subset <= set(alg.carrier):
        raise ValueError("restriction target is not a subset of the carrier")
    carrier = tuple(s for s in alg.carrier if s in subset)
    atoms = tuple(a & subset for a in alg.atoms if a & subset)
    return SetAlgebra(carrier, atoms)


def restrict_relation(rel: Relation, subset: Iterable[str]) -> Relation:
    """Keep only the pairs with both endpoints inside `subset`."""
    subset = frozenset(subset)
    carrier = tuple(s for s in rel.carrier if s in subset)
    if isinstance(rel, EqRelation):
        classes = tuple(c & subset for c in rel.classes if c & subset)
        return EqRelation(carrier, classes)
    pairs = frozenset(p for p in rel.pairs if p[0] in subset and p[1] in subset)
    return SymRelation(carrier, pairs)
