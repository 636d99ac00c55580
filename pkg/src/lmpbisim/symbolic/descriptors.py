"""Descriptor lattices for the symbolic unit-interval fibers.

A fiber's σ-algebra restriction is abstracted to one of four tags,

    Trivial  <  Cuts(D)  <  Borel  <  BorelV,

where D is a finite set of cut indices (index n stands for the rational
q_n of the fixed enumeration) or the symbolic token AllRationals, which
σ-generates the full Borel algebra.  A fiber's relation restriction is

    Total  ⊇  CutsRel(D)  ⊇  Identity,

the partition of the interval by the cuts in D.  A finite cut set never
reaches Identity (its classes have positive length); only the AllRationals
token does, which is how meets at limit stages collapse.  The two measures
of a MeasurePair agree everywhere except on the one descriptor (BorelV)
whose sections may involve the distinguished non-measurable set.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from ..errors import UnsupportedConfiguration
from ..rational import format_rational


class _AllRationals:
    """Symbolic token: the cut set is cofinally all of the enumeration."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AllRationals"


ALL_RATIONALS = _AllRationals()


class SigmaTag(enum.Enum):
    TRIVIAL = "Trivial"
    CUTS = "Cuts"
    BOREL = "Borel"
    BORELV = "BorelV"


class RelTag(enum.Enum):
    TOTAL = "Total"
    CUTSREL = "CutsRel"
    IDENTITY = "Identity"


@dataclass(frozen=True)
class FiberSigma:
    tag: SigmaTag
    cut_indices: frozenset[int] = frozenset()

    @staticmethod
    def trivial() -> "FiberSigma":
        return FiberSigma(SigmaTag.TRIVIAL)

    @staticmethod
    def cuts(indices) -> "FiberSigma":
        """Cuts(D); the empty set degenerates to Trivial and the
        AllRationals token σ-generates Borel."""
        if indices is ALL_RATIONALS:
            return FiberSigma.borel()
        indices = frozenset(indices)
        if not indices:
            return FiberSigma.trivial()
        return FiberSigma(SigmaTag.CUTS, indices)

    @staticmethod
    def borel() -> "FiberSigma":
        return FiberSigma(SigmaTag.BOREL)

    @staticmethod
    def borel_v() -> "FiberSigma":
        return FiberSigma(SigmaTag.BORELV)

    def distinguishes_measures(self) -> bool:
        """Whether sections of this algebra can tell m0 from m1."""
        return self.tag is SigmaTag.BORELV

    def leq(self, other: "FiberSigma") -> bool:
        order = [SigmaTag.TRIVIAL, SigmaTag.CUTS, SigmaTag.BOREL, SigmaTag.BORELV]
        if self.tag is SigmaTag.CUTS and other.tag is SigmaTag.CUTS:
            return self.cut_indices <= other.cut_indices
        return order.index(self.tag) <= order.index(other.tag)

    def join(self, other: "FiberSigma") -> "FiberSigma":
        if self.tag is SigmaTag.CUTS and other.tag is SigmaTag.CUTS:
            return FiberSigma.cuts(self.cut_indices | other.cut_indices)
        return other if self.leq(other) else self

    def render(self) -> str:
        if self.tag is SigmaTag.CUTS:
            inside = ",".join(f"q{n}" for n in sorted(self.cut_indices))
            return f"Cuts({{{inside}}})"
        return self.tag.value


@dataclass(frozen=True)
class FiberRel:
    tag: RelTag
    cut_indices: frozenset[int] = frozenset()

    @staticmethod
    def total() -> "FiberRel":
        return FiberRel(RelTag.TOTAL)

    @staticmethod
    def cuts_rel(indices) -> "FiberRel":
        """CutsRel(D); empty D is the total relation, and only the symbolic
        AllRationals token collapses to the identity."""
        if indices is ALL_RATIONALS:
            return FiberRel.identity()
        indices = frozenset(indices)
        if not indices:
            return FiberRel.total()
        return FiberRel(RelTag.CUTSREL, indices)

    @staticmethod
    def identity() -> "FiberRel":
        return FiberRel(RelTag.IDENTITY)

    def refines(self, other: "FiberRel") -> bool:
        """self ⊆ other as relations on the fiber."""
        order = [RelTag.IDENTITY, RelTag.CUTSREL, RelTag.TOTAL]
        if self.tag is RelTag.CUTSREL and other.tag is RelTag.CUTSREL:
            return self.cut_indices >= other.cut_indices
        return order.index(self.tag) <= order.index(other.tag)

    def meet(self, other: "FiberRel") -> "FiberRel":
        if self.tag is RelTag.CUTSREL and other.tag is RelTag.CUTSREL:
            return FiberRel.cuts_rel(self.cut_indices | other.cut_indices)
        return self if self.refines(other) else other

    def render(self) -> str:
        if self.tag is RelTag.CUTSREL:
            inside = ",".join(f"q{n}" for n in sorted(self.cut_indices))
            return f"CutsRel({{{inside}}})"
        return self.tag.value


def sigma_of_rel(rel: FiberRel) -> FiberSigma:
    """One Σ(·)-step on a fiber that is relation-separated from the rest:
    the closed sections are exactly the unions of the relation's classes."""
    if rel.tag is RelTag.TOTAL:
        return FiberSigma.trivial()
    if rel.tag is RelTag.CUTSREL:
        return FiberSigma.cuts(rel.cut_indices)
    return FiberSigma.borel_v()


def rel_of_sigma_membership(sigma: FiberSigma) -> FiberRel:
    """𝓡-style membership indistinguishability within a fiber: Borel (and
    finer) sections separate points; cut sections identify cut-intervals."""
    if sigma.tag is SigmaTag.TRIVIAL:
        return FiberRel.total()
    if sigma.tag is SigmaTag.CUTS:
        return FiberRel.cuts_rel(sigma.cut_indices)
    return FiberRel.identity()


@dataclass(frozen=True)
class MeasurePair:
    """Two extensions of Lebesgue measure that agree on every Borel section
    and return p0 / p1 on the distinguished non-measurable set."""

    p0: Fraction
    p1: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p0", Fraction(self.p0))
        object.__setattr__(self, "p1", Fraction(self.p1))
        if not (0 < self.p0 < 1 and 0 < self.p1 < 1):
            raise ValueError("both measures of V must lie in (0,1)")
        if self.p0 == self.p1:
            raise ValueError("the two extensions must disagree on V")

    def render(self) -> str:
        return f"m0(V)={format_rational(self.p0)}, m1(V)={format_rational(self.p1)}"


def join_sigma_chain(descs) -> FiberSigma:
    """σ-generated join of an increasing chain of Σ-descriptors observed
    along a fundamental-sequence prefix.

    A chain still strictly accumulating cuts at the end of the prefix is
    cofinal in the full rational enumeration, so its σ-join is Borel; an
    eventually constant chain joins to its final value.
    """
    descs = list(descs)
    if not descs:
        raise UnsupportedConfiguration("empty descriptor chain")
    for a, b in zip(descs, descs[1:]):
        if not a.leq(b):
            raise UnsupportedConfiguration("Σ-descriptor chain is not increasing")
    last = descs[-1]
    if last.tag in (SigmaTag.BORELV, SigmaTag.BOREL, SigmaTag.TRIVIAL):
        return last
    if len(descs) >= 2 and descs[-2].tag is SigmaTag.CUTS \
            and descs[-2].cut_indices < last.cut_indices:
        return FiberSigma.cuts(ALL_RATIONALS)
    return last


def meet_rel_chain(descs) -> FiberRel:
    """Meet of a decreasing chain of R-descriptors along a prefix; a chain
    still strictly gaining cuts meets to the identity (AllRationals)."""
    descs = list(descs)
    if not descs:
        raise UnsupportedConfiguration("empty descriptor chain")
    for a, b in zip(descs, descs[1:]):
        if not b.refines(a):
            raise UnsupportedConfiguration("R-descriptor chain is not decreasing")
    last = descs[-1]
    if last.tag in (RelTag.IDENTITY, RelTag.TOTAL):
        return last
    if len(descs) >= 2 and descs[-2].tag is RelTag.CUTSREL \
            and descs[-2].cut_indices < last.cut_indices:
        return FiberRel.cuts_rel(ALL_RATIONALS)
    return last
