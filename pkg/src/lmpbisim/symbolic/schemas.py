"""Symbolic processes over unit-interval fibers.

Four schemas are supported:

  * the seed process with gadget states s, t, x over one interval fiber,
  * the ordinal-indexed family over fibers I × {η}, η < β, where fiber 0
    carries the scaling kernel x·m0(A_0) and fiber η > 0 reads its target
    fiber with a cut at q_n per label n (predecessor target at successors,
    fundamental-sequence targets at limits),
  * the amalgam of an inner process whose Zhou ordinal is a successor,
  * the serial sum over a limit ordinal, with summand family fixed to the
    ordinal-indexed schema at the fundamental-sequence values.

The engine never enumerates points: each fiber carries a Σ-descriptor and
an R-descriptor, and all stage queries reduce to two per-fiber thresholds
derived by recursion on the step rules:

  identity stage  id(f): the first stage whose relation on f is the
      identity.  id(fiber 0) = 0 (the scaling kernel separates points
      immediately); a successor fiber becomes identity exactly one step
      after its target fiber unveils, so id(ζ+1) = id(ζ) + 1; a limit
      fiber accumulates one cut per target, so id(λf) = sup_n (id(λf[n])+1),
      evaluated by probing the fundamental sequence and squeezing against
      its cofinality.

  unveil stage  id(f) + 1: the first stage whose algebra on f contains
      sections distinguishing the two measure extensions (the fiber copy
      of the non-measurable set enters one Σ(·)-step after the relation
      reaches the identity).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..errors import (
    NotLimit,
    NotSuccessorZhou,
    OrdinalOutOfRange,
    UnsupportedConfiguration,
)
from ..ordinal import Ordinal, ZERO_ORD, fund_seq
from .descriptors import FiberRel, FiberSigma, MeasurePair

DEFAULT_MEASURE = MeasurePair(p0="1/3", p1="2/3")

# probes used to certify sup-squeezes over fundamental sequences
PROBE = 8
# hard cap on explicit cut-set sizes (a stage query never needs this many)
CUTSET_CAP = 4096

FiberKey = tuple


@lru_cache(maxsize=None)
def fiber_identity_stage(fiber: Ordinal) -> Ordinal:
    """id(f) for the ordinal-indexed schema, by recursion on the step rules.

    The limit case returns the fiber itself after certifying, on a probe
    prefix, that the recursion yields id(f[n]) = f[n]; the values f[n]+1
    are then cofinal in f and below it, so the sup is exactly f.
    """
    if fiber.is_zero():
        return ZERO_ORD
    delta, k = fiber.limit_part()
    if k:
        return fiber_identity_stage(delta).plus_int(k)
    previous = None
    for n in range(PROBE):
        target = fund_seq(fiber, n)
        stage = fiber_identity_stage(target)
        if stage != target:
            raise UnsupportedConfiguration(
                f"fiber {target} reaches identity at {stage}, breaking the sup squeeze")
        if previous is not None and not previous < stage:
            raise UnsupportedConfiguration("fundamental-sequence stages must increase")
        previous = stage
    return fiber


def fiber_unveil_stage(fiber: Ordinal) -> Ordinal:
    return fiber_identity_stage(fiber).succ()


def _limit_cutset(fiber: Ordinal, stage: Ordinal, strict: bool) -> frozenset[int]:
    """Cut indices available on a limit fiber: cut q_n is usable once the
    target fiber[n] has unveiled ((strictly) before `stage`).

    Targets unveil in increasing order (certified by the identity-stage
    probes), so the scan may stop at the first miss.
    """
    out = []
    n = 0
    while True:
        unveil = fiber_unveil_stage(fund_seq(fiber, n))
        if not (unveil < stage if strict else unveil <= stage):
            return frozenset(out)
        out.append(n)
        n += 1
        if n > CUTSET_CAP:
            raise UnsupportedConfiguration("cut set exceeded the explicit cap")


def s_rel_at(fiber: Ordinal, stage: Ordinal) -> FiberRel:
    if fiber.is_zero():
        return FiberRel.identity()
    ident = fiber_identity_stage(fiber)
    if stage >= ident:
        return FiberRel.identity()
    if fiber.is_successor():
        return FiberRel.total()
    return FiberRel.cuts_rel(_limit_cutset(fiber, stage, strict=False))


def s_sigma_at(fiber: Ordinal, stage: Ordinal) -> FiberSigma:
    if fiber.is_zero():
        return FiberSigma.borel() if stage.is_zero() else FiberSigma.borel_v()
    ident = fiber_identity_stage(fiber)
    if stage > ident:
        return FiberSigma.borel_v()
    if stage.is_zero():
        return FiberSigma.trivial()
    if fiber.is_successor():
        return FiberSigma.trivial()
    if stage == ident:
        # every cut is in by now; the σ-generated join of all cut algebras
        return FiberSigma.borel()
    return FiberSigma.cuts(_limit_cutset(fiber, stage, strict=True))


def ordinal_grid(bound: Ordinal, extras=()) -> tuple[Ordinal, ...]:
    """A finite, canonical sample of ordinals below `bound` used when a
    stage has to be displayed or checked fiber by fiber."""
    points = {Ordinal.from_int(k) for k in range(5)}
    max_exp = bound.terms[0][0] if bound.terms else 0
    for e in range(1, max_exp + 1):
        for c in (1, 2):
            base = Ordinal.omega(e, c)
            for k in range(3):
                points.add(base.plus_int(k))
    for i in range(len(bound.terms)):
        e, c = bound.terms[i]
        head = bound.terms[:i]
        for cc in range(1, min(c, 3) + 1):
            base = Ordinal(head + ((e, cc),))
            for k in range(3):
                points.add(base.plus_int(k))
    points.update(extras)
    return tuple(sorted(p for p in points if p < bound))


@dataclass(frozen=True)
class SymbolicLMP:
    """Base class; concrete schemas implement the per-fiber stage queries."""

    measure: MeasurePair = field(default=DEFAULT_MEASURE)

    def schema_name(self) -> str:
        raise NotImplementedError

    def fiber_sample(self, stage: Ordinal) -> tuple[FiberKey, ...]:
        raise NotImplementedError

    def sigma_at(self, key: FiberKey, stage: Ordinal) -> FiberSigma:
        raise NotImplementedError

    def rel_at(self, key: FiberKey, stage: Ordinal) -> FiberRel:
        raise NotImplementedError

    def gadget_names(self) -> tuple[str, ...]:
        return ()

    def pair_split_stage(self):
        """Stage at which the gadget pair (s,t) separates, or None."""
        return None

    def zhou(self) -> Ordinal:
        raise NotImplementedError

    def last_split(self) -> tuple[str, Ordinal]:
        """Witness for amalgamation: which component separates last, when."""
        raise NotImplementedError

    def last_unveil(self) -> tuple[str, Ordinal]:
        """Witness for amalgamation: the component whose measure-splitting
        set is the last to appear, and the stage of first appearance."""
        raise NotImplementedError

    def render(self) -> str:
        return self.schema_name()


@dataclass(frozen=True)
class ProcU(SymbolicLMP):
    """One interval fiber, gadget states s, t (spreading m0/m1 over the
    fiber) and x (the target of the per-cut membership tests)."""

    def schema_name(self) -> str:
        return "U"

    def fiber_sample(self, stage=None) -> tuple[FiberKey, ...]:
        return (("interval",),)

    def sigma_at(self, key, stage):
        assert key == ("interval",)
        # the membership tests put every cut in at stage 0; V follows one step later
        return FiberSigma.borel() if stage.is_zero() else FiberSigma.borel_v()

    def rel_at(self, key, stage):
        assert key == ("interval",)
        return FiberRel.identity()

    def gadget_names(self):
        return ("(s,t)", "x")

    def pair_split_stage(self) -> Ordinal:
        return Ordinal.from_int(1)

    def zhou(self) -> Ordinal:
        return Ordinal.from_int(1)

    def last_split(self):
        return "pair (s,t)", Ordinal.from_int(1)

    def last_unveil(self):
        return "interval fiber", Ordinal.from_int(1)


@dataclass(frozen=True)
class ProcS(SymbolicLMP):
    """The ordinal-indexed family: fibers I × {η} for η < beta."""

    beta: Ordinal = field(default_factory=lambda: Ordinal.from_int(1))

    def __post_init__(self):
        if self.beta.is_zero():
            raise OrdinalOutOfRange("the fiber index bound must be positive")

    def schema_name(self) -> str:
        return f"S({self.beta})"

    def fiber_sample(self, stage=None) -> tuple[FiberKey, ...]:
        extras = []
        if stage is not None:
            for cand in (stage, stage.succ()):
                extras.append(cand)
            if stage.is_successor():
                extras.append(stage.pred())
        return tuple(("fiber", f) for f in ordinal_grid(self.beta, extras))

    def sigma_at(self, key, stage):
        kind, fiber = key
        assert kind == "fiber" and fiber < self.beta
        return s_sigma_at(fiber, stage)

    def rel_at(self, key, stage):
        kind, fiber = key
        assert kind == "fiber" and fiber < self.beta
        return s_rel_at(fiber, stage)

    def zhou(self) -> Ordinal:
        """sup of the per-fiber identity stages.

        State bisimilarity is the identity for this schema (the scaling
        fiber separates its points outright and each further fiber is
        separated through its targets), so the Zhou ordinal is the first
        stage at which every fiber's relation has collapsed to identity.
        """
        if self.beta.is_successor():
            return fiber_identity_stage(self.beta.pred())
        for n in range(PROBE):
            fiber = fund_seq(self.beta, n)
            if fiber_identity_stage(fiber) != fiber:
                raise UnsupportedConfiguration("per-fiber identity stages broke the squeeze")
        return self.beta

    def last_split(self):
        z = self.zhou()
        top = self.beta.pred()  # exists whenever z is a successor
        assert fiber_identity_stage(top) == z
        return f"fiber {top}", z

    def last_unveil(self):
        z = self.zhou()
        witness = z.pred()  # fiber unveiling exactly at stage z
        assert fiber_unveil_stage(witness) == z
        return f"fiber {witness}", z


@dataclass(frozen=True)
class ProcAmalgam(SymbolicLMP):
    """A fresh interval fiber whose points act as the inner witness pair on
    either side of each cut, plus gadget states s, t reading the fiber."""

    inner: SymbolicLMP = None

    def __post_init__(self):
        z = self.inner.zhou()
        if not z.is_successor():
            raise NotSuccessorZhou(
                f"inner process has Zhou ordinal {z}; a successor is required")

    def inner_zhou(self) -> Ordinal:
        return self.inner.zhou()

    def schema_name(self) -> str:
        return f"Amalgam({self.inner.schema_name()})"

    def witness(self) -> str:
        split_where, split_stage = self.inner.last_split()
        unveil_where, unveil_stage = self.inner.last_unveil()
        return (f"inner {split_where} separates at stage {split_stage} via the "
                f"set unveiled on inner {unveil_where} at stage {unveil_stage}")

    def fiber_sample(self, stage=None) -> tuple[FiberKey, ...]:
        inner_keys = tuple(("inner",) + k for k in self.inner.fiber_sample(stage))
        return inner_keys + (("interval",),)

    def sigma_at(self, key, stage):
        if key[0] == "inner":
            return self.inner.sigma_at(key[1:], stage)
        assert key == ("interval",)
        if stage > self.inner_zhou():
            return FiberSigma.borel_v()
        return FiberSigma.trivial()

    def rel_at(self, key, stage):
        if key[0] == "inner":
            return self.inner.rel_at(key[1:], stage)
        assert key == ("interval",)
        # all cuts activate together, the moment the inner witness pair splits
        if stage >= self.inner_zhou():
            return FiberRel.identity()
        return FiberRel.total()

    def gadget_names(self):
        return ("(s,t)",) + tuple(f"inner {g}" for g in self.inner.gadget_names())

    def pair_split_stage(self) -> Ordinal:
        return self.inner_zhou().succ()

    def zhou(self) -> Ordinal:
        return self.inner_zhou().succ()

    def last_split(self):
        return "pair (s,t)", self.zhou()

    def last_unveil(self):
        return "interval fiber", self.zhou()


@lru_cache(maxsize=None)
def _serial_summand(lam: Ordinal, m: int, measure: MeasurePair) -> ProcS:
    return ProcS(measure=measure, beta=fund_seq(lam, m).succ())


@dataclass(frozen=True)
class ProcSerialSum(SymbolicLMP):
    """Summands S^m with Zhou ordinals ζ_m = λ[m], one interval fiber whose
    cut q_m activates serially when summand m's witness pair splits, and
    gadget states s, t reading the fiber."""

    lam: Ordinal = field(default_factory=lambda: Ordinal.omega())

    SUMMAND_SAMPLE = 3

    def __post_init__(self):
        if not self.lam.is_limit():
            raise NotLimit(f"{self.lam} is not a limit ordinal")

    def schema_name(self) -> str:
        return f"SerialSum({self.lam})"

    def summand(self, m: int) -> ProcS:
        return _serial_summand(self.lam, m, self.measure)

    def zeta(self, m: int) -> Ordinal:
        """ζ_m, the m-th summand's Zhou ordinal (= λ[m] by construction)."""
        value = self.summand(m).zhou()
        expected = fund_seq(self.lam, m)
        if value != expected:
            raise UnsupportedConfiguration(
                f"summand {m} has Zhou ordinal {value}, expected {expected}")
        return value

    def _interval_cutset(self, stage: Ordinal, strict: bool) -> frozenset[int]:
        out = []
        m = 0
        while True:
            zeta = self.zeta(m)
            if not (zeta < stage if strict else zeta <= stage):
                return frozenset(out)
            out.append(m)
            m += 1
            if m > CUTSET_CAP:
                raise UnsupportedConfiguration("cut set exceeded the explicit cap")

    def fiber_sample(self, stage=None) -> tuple[FiberKey, ...]:
        keys = []
        for m in range(self.SUMMAND_SAMPLE):
            keys.extend(("summand", m) + k for k in self.summand(m).fiber_sample(stage))
        keys.append(("interval",))
        return tuple(keys)

    def sigma_at(self, key, stage):
        if key[0] == "summand":
            return self.summand(key[1]).sigma_at(key[2:], stage)
        assert key == ("interval",)
        if stage > self.lam:
            return FiberSigma.borel_v()
        if stage == self.lam:
            return FiberSigma.borel()  # all cuts are in; σ-generated join
        return FiberSigma.cuts(self._interval_cutset(stage, strict=True))

    def rel_at(self, key, stage):
        if key[0] == "summand":
            return self.summand(key[1]).rel_at(key[2:], stage)
        assert key == ("interval",)
        if stage >= self.lam:
            return FiberRel.identity()
        return FiberRel.cuts_rel(self._interval_cutset(stage, strict=False))

    def gadget_names(self):
        return ("(s,t)",)

    def pair_split_stage(self) -> Ordinal:
        return self.lam.succ()

    def zhou(self) -> Ordinal:
        """The summands exhaust their ζ_m below λ, the interval fiber reaches
        identity exactly at λ, and the gadget pair splits one step later."""
        for m in range(PROBE):
            if self.zeta(m) != fund_seq(self.lam, m):
                raise UnsupportedConfiguration("summand Zhou ordinals broke the squeeze")
        return self.lam.succ()

    def last_split(self):
        return "pair (s,t)", self.zhou()

    def last_unveil(self):
        return "interval fiber", self.zhou()


def build_U(measure: MeasurePair = DEFAULT_MEASURE) -> ProcU:
    return ProcU(measure=measure)


def build_S(beta: Ordinal, measure: MeasurePair = DEFAULT_MEASURE) -> ProcS:
    return ProcS(measure=measure, beta=beta)


def amalgamate(inner: SymbolicLMP) -> ProcAmalgam:
    return ProcAmalgam(measure=inner.measure, inner=inner)


def serial_sum(lam: Ordinal, measure: MeasurePair = DEFAULT_MEASURE) -> ProcSerialSum:
    return ProcSerialSum(measure=measure, lam=lam)
