"""The minimal probabilistic modal logic and its finite-space semantics.

Grammar:  phi ::= top | (phi & phi) | <label>{>q} phi
with q a rational threshold in [0,1).  The satisfaction set of a diamond
is the threshold test {s : tau_label(s, [[phi]]) > q}; on a finite space
every satisfaction set is a union of sigma-atoms, which the evaluator
asserts after each step.

`logic_sigma` computes the smallest stable sub-σ-algebra by saturating
the trivial algebra under the attained-threshold tests: between two
consecutive attained values of tau_a(.,A) the test set does not change,
so only attained values need to be tried.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import FiniteLMP, SetAlgebra, sigma_generate
from .errors import CapacityExceeded, FormulaSyntaxError, UnknownLabel
from .rational import ZERO, format_rational


class Formula:
    """Base class; instances are immutable ASTs."""

    __slots__ = ()


@dataclass(frozen=True)
class Top(Formula):
    def render(self) -> str:
        return "top"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def render(self) -> str:
        return f"({self.left.render()} & {self.right.render()})"


@dataclass(frozen=True)
class Diamond(Formula):
    label: str
    threshold: Fraction
    body: Formula

    def __post_init__(self):
        if not (ZERO <= self.threshold < 1):
            raise FormulaSyntaxError(
                f"threshold {format_rational(self.threshold)} outside [0,1)", 0)

    def render(self) -> str:
        return f"<{self.label}>{{>{format_rational(self.threshold)}}} {self.body.render()}"


class _Parser:
    """Recursive-descent parser, whitespace-insensitive, offset-reporting."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, expected=()):
        raise FormulaSyntaxError(message, self.pos, expected)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, token):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            self.error(f"expected {token!r}", {token})
        self.pos += len(token)

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_formula(self) -> Formula:
        c = self.peek()
        if self.text.startswith("top", self.pos):
            self.pos += 3
            return Top()
        if c == "(":
            self.pos += 1
            left = self.parse_formula()
            self.expect("&")
            right = self.parse_formula()
            self.expect(")")
            return And(left, right)
        if c == "<":
            self.pos += 1
            label = self.parse_label()
            self.expect(">")
            self.expect("{")
            self.expect(">")
            threshold = self.parse_threshold()
            self.expect("}")
            body = self.parse_formula()
            return Diamond(label, threshold, body)
        self.error("expected a formula", {"top", "(", "<"})

    def parse_label(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ">{}" \
                and not self.text[self.pos].isspace():
            self.pos += 1
        if self.pos == start:
            self.error("expected a label", {"LABEL"})
        return self.text[start:self.pos]

    def parse_threshold(self) -> Fraction:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isdigit()
                                             or self.text[self.pos] in "/."):
            self.pos += 1
        if self.pos == start:
            self.error("expected a rational threshold", {"RATIONAL"})
        literal = self.text[start:self.pos]
        try:
            value = Fraction(literal)
        except (ValueError, ZeroDivisionError):
            self.pos = start
            self.error(f"bad rational literal {literal!r}", {"RATIONAL"})
        if not (ZERO <= value < 1):
            self.pos = start
            self.error(f"threshold {literal} outside [0,1)", {"RATIONAL in [0,1)"})
        return value


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    formula = parser.parse_formula()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error("trailing input after formula", {"end of input"})
    return formula


def eval_formula(lmp: FiniteLMP, formula: Formula) -> frozenset[str]:
    """[[formula]] as a set of states; always a member of lmp.sigma."""
    if isinstance(formula, Top):
        return frozenset(lmp.states)
    if isinstance(formula, And):
        return eval_formula(lmp, formula.left) & eval_formula(lmp, formula.right)
    if isinstance(formula, Diamond):
        if formula.label not in lmp.labels:
            raise UnknownLabel(f"label {formula.label!r} not in {list(lmp.labels)}")
        body = eval_formula(lmp, formula.body)
        idx = lmp.sigma.decompose(body)
        rows = lmp.kernels[formula.label]
        result = frozenset(
            s for i, s in enumerate(lmp.states)
            if sum((rows[i][j] for j in idx), ZERO) > formula.threshold)
        # measurability induction: every satisfaction set is a union of atoms
        assert lmp.sigma.contains_set(result), "satisfaction set escaped sigma"
        return result
    raise TypeError(f"not a formula: {formula!r}")


def _atom_measure_rows(lmp: FiniteLMP, atoms):
    """tau_a(s, atom) for the atoms of a subalgebra, per label and state."""
    table = {}
    for lab in lmp.labels:
        rows = lmp.kernels[lab]
        per_state = []
        for i in range(len(lmp.states)):
            per_state.append(tuple(
                sum((rows[i][j] for j in lmp.sigma.decompose(atom)), ZERO)
                for atom in atoms))
        table[lab] = per_state
    return table


def element_value_vectors(lmp: FiniteLMP, atoms):
    """Value vectors (tau_a(s, A))_s for every element A of the algebra with
    the given atoms, via subset-sum dynamic programming over atom masks."""
    if len(atoms) > 20:
        raise CapacityExceeded(f"algebra has 2^{len(atoms)} elements, cap is 2^20")
    table = _atom_measure_rows(lmp, atoms)
    n = len(atoms)
    n_states = len(lmp.states)
    out = {}
    for lab in lmp.labels:
        per_state = table[lab]
        vectors = [None] * (1 << n)
        vectors[0] = tuple(ZERO for _ in range(n_states))
        for mask in range(1, 1 << n):
            low = (mask & -mask).bit_length() - 1
            rest = vectors[mask & (mask - 1)]
            vectors[mask] = tuple(rest[i] + per_state[i][low] for i in range(n_states))
        out[lab] = vectors
    return out


def _mask_to_set(atoms, mask):
    parts = [atoms[i] for i in range(len(atoms)) if mask >> i & 1]
    return frozenset().union(*parts) if parts else frozenset()


@lru_cache(maxsize=None)
def logic_sigma(lmp: FiniteLMP) -> SetAlgebra:
    """The smallest stable sub-σ-algebra of lmp.sigma, i.e. σ([[L]]).

    Saturation from the trivial algebra: each round adds every threshold
    test of every element of the current algebra and regenerates; the atom
    partition strictly refines until a fixpoint, so at most |S| rounds run.

    Whether thresholds range over [0,1] or only (0,1) is immaterial here:
    a finite kernel attains finitely many values and only those change the
    test sets, so attained values are the complete threshold set.
    """
    atoms = SetAlgebra.trivial(lmp.states).atoms
    while True:
        vectors = element_value_vectors(lmp, atoms)
        tests = set()
        for lab in lmp.labels:
            for vec in vectors[lab]:
                for q in set(vec):
                    test = frozenset(s for s, v in zip(lmp.states, vec) if v > q)
                    if test:
                        tests.add(test)
        new = sigma_generate(lmp.states, tuple(atoms) + tuple(tests)).atoms
        if new == atoms:
            result = SetAlgebra(lmp.states, atoms)
            assert lmp.sigma.includes(result), "stable algebra escaped sigma"
            return result
        atoms = new


def distinguishing_formula(lmp: FiniteLMP, s: str, t: str):
    """A formula holding at exactly one of s, t, or None if none exists.

    Saturates the family {[[phi]]} (the closure of {S} under intersections
    and attained-threshold diamonds) and returns the first separator found,
    with its defining formula; exhaustion without a separator means the two
    states agree on every formula, i.e. they are event bisimilar.
    """
    if s == t:
        return None
    lmp.state_index(s), lmp.state_index(t)
    top_set = frozenset(lmp.states)
    known: dict[frozenset[str], Formula] = {top_set: Top()}
    processed: list[frozenset[str]] = []
    queue = [top_set]

    def separator(a_set):
        return (s in a_set) != (t in a_set)

    while queue:
        current = queue.pop(0)
        phi = known[current]
        new_sets = []
        # diamonds over the current set
        idx = lmp.sigma.decompose(current)
        for lab in lmp.labels:
            rows = lmp.kernels[lab]
            vec = [sum((rows[i][j] for j in idx), ZERO) for i in range(len(lmp.states))]
            for q in set(vec):
                if q >= 1:
                    continue
                test = frozenset(st for st, v in zip(lmp.states, vec) if v > q)
                if test and test not in known:
                    new_sets.append((test, Diamond(lab, q, phi)))
        # intersections with everything already processed
        for other in processed:
            inter = current & other
            if inter and inter not in known:
                new_sets.append((inter, And(phi, known[other])))
        processed.append(current)
        for new_set, new_phi in new_sets:
            if new_set in known:
                continue
            known[new_set] = new_phi
            if separator(new_set):
                return new_phi
            queue.append(new_set)
            if len(known) > 1 << 20:
                raise CapacityExceeded("formula-set closure exceeded 2^20 sets")
    return None
