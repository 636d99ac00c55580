"""Hierarchy-level bookkeeping for fiberwise product sets.

Interval sets are built from the generator family (the distinguished set
V, its complement, and the open rational intervals) by complements and
countable unions.  Every node carries upper bounds (s, p) on the least
additive / co-additive hierarchy level containing it:

  * generators sit at level 1 (the first additive class is the family of
    countable unions of generators);
  * a countable union of sets of levels s_i stays at sup s_i (the additive
    classes are closed under countable unions);
  * a complement swaps the two bounds.

A fiberwise set maps finitely many fibers to interval sets, with a default
for the rest; its complexity is the sup of the per-fiber levels, always a
countable ordinal, so membership in the product σ-algebra is automatic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..ordinal import Ordinal

_ONE = Ordinal.from_int(1)


@dataclass(frozen=True)
class IntervalSet:
    """An interval-fiber set with construction-assigned hierarchy bounds."""

    describe: str
    sigma_level: Ordinal
    pi_level: Ordinal

    @staticmethod
    def empty() -> "IntervalSet":
        return IntervalSet("empty", _ONE, _ONE)

    @staticmethod
    def full() -> "IntervalSet":
        return IntervalSet("I", _ONE, _ONE)

    @staticmethod
    def v_set() -> "IntervalSet":
        # V and its complement are both generators, so each is Pi_1 as well
        return IntervalSet("V", _ONE, _ONE)

    @staticmethod
    def v_complement() -> "IntervalSet":
        return IntervalSet("V^c", _ONE, _ONE)

    @staticmethod
    def interval(lo: Fraction, hi: Fraction) -> "IntervalSet":
        # complement of an open interval is two half-open pieces: Pi_1 each,
        # so the complement bound is one additive level up
        return IntervalSet(f"({lo},{hi})", _ONE, Ordinal.from_int(2))

    def complement(self) -> "IntervalSet":
        return IntervalSet(f"compl[{self.describe}]", self.pi_level, self.sigma_level)

    @staticmethod
    def union(parts) -> "IntervalSet":
        parts = list(parts)
        if not parts:
            return IntervalSet.empty()
        level = max(p.sigma_level for p in parts)
        label = " u ".join(p.describe for p in parts)
        return IntervalSet(f"union[{label}]", level, level.succ())


@dataclass(frozen=True)
class FiberwiseSet:
    """A product set given fiber by fiber, with a default section."""

    sections: tuple[tuple[Ordinal, IntervalSet], ...]
    default: IntervalSet

    @staticmethod
    def of(sections: dict, default: IntervalSet = IntervalSet.empty()) -> "FiberwiseSet":
        items = tuple(sorted(sections.items(), key=lambda kv: kv[0]))
        return FiberwiseSet(items, default)


def complexity(q: FiberwiseSet) -> Ordinal:
    """sup of the per-fiber hierarchy levels of the sections."""
    levels = [q.default.sigma_level] + [s.sigma_level for _, s in q.sections]
    return max(levels)


def in_product_algebra(q: FiberwiseSet) -> bool:
    """Countable complexity is automatic for engine-built sets."""
    return True
