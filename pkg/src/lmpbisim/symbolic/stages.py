"""Stage queries, single steps, and descriptor-level law checks.

A stage snapshot records, for a finite sample of fibers, the Σ- and
R-descriptors at an ordinal stage, plus the gadget facts (whether the
distinguished pair is still related).  Snapshots of different stages of
the same process are comparable fiber by fiber.

`sym_step` produces the successor snapshot and re-derives it from the
step rules as a cross-check:

  Σ-side   the new algebra on a fiber is determined by the old relation
           there (Total→Trivial, CutsRel(D)→Cuts(D), Identity→BorelV);
  R-side   the new relation is determined by which target fibers now
           distinguish the two measure extensions (are BorelV): all-at-once
           for the scaling and successor/interval shapes, cut by cut for
           limit and serial shapes;
  gadgets  the pair splits exactly when the fiber its label reads has
           turned BorelV.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UnsupportedConfiguration
from ..ordinal import Ordinal, fund_seq
from .descriptors import (
    FiberRel,
    FiberSigma,
    RelTag,
    rel_of_sigma_membership,
    sigma_of_rel,
)
from .schemas import (
    PROBE,
    ProcAmalgam,
    ProcS,
    ProcSerialSum,
    ProcU,
    SymbolicLMP,
    fiber_identity_stage,
)


@dataclass(frozen=True)
class SymStage:
    process: SymbolicLMP
    stage: Ordinal
    entries: tuple[tuple[tuple, FiberSigma, FiberRel], ...]
    gadgets: tuple[tuple[str, str], ...]

    def sigma(self, key) -> FiberSigma:
        for k, s, _ in self.entries:
            if k == key:
                return s
        raise KeyError(key)

    def rel(self, key) -> FiberRel:
        for k, _, r in self.entries:
            if k == key:
                return r
        raise KeyError(key)

    def pair_related(self):
        for name, status in self.gadgets:
            if name == "pair (s,t)":
                return status == "related"
        return None

    def render_lines(self) -> list[str]:
        lines = [f"stage {self.stage} of {self.process.render()}"]
        for key, sigma, rel in self.entries:
            lines.append(f"  {render_fiber_key(key)}: sigma={sigma.render()} rel={rel.render()}")
        for name, status in self.gadgets:
            lines.append(f"  {name}: {status}")
        return lines


def render_fiber_key(key) -> str:
    if key == ("interval",):
        return "fiber I"
    if key[0] == "fiber":
        return f"fiber {key[1]}"
    if key[0] == "inner":
        return "inner " + render_fiber_key(key[1:])
    if key[0] == "summand":
        return f"summand {key[1]} " + render_fiber_key(key[2:])
    return repr(key)


def gadget_facts(proc: SymbolicLMP, stage: Ordinal) -> tuple[tuple[str, str], ...]:
    facts = []
    split = proc.pair_split_stage()
    if split is not None:
        facts.append(("pair (s,t)", "related" if stage < split else "split"))
    if isinstance(proc, ProcU):
        facts.append(("state x", "isolated"))
    if isinstance(proc, ProcAmalgam):
        facts.extend((f"inner {n}", s) for n, s in gadget_facts(proc.inner, stage))
    return tuple(facts)


def sym_stage(proc: SymbolicLMP, stage: Ordinal, fibers=None) -> SymStage:
    keys = tuple(fibers) if fibers is not None else proc.fiber_sample(stage)
    entries = tuple((k, proc.sigma_at(k, stage), proc.rel_at(k, stage)) for k in keys)
    return SymStage(proc, stage, entries, gadget_facts(proc, stage))


def sym_step(proc: SymbolicLMP, st: SymStage) -> SymStage:
    """One 𝒪/𝒢 step; the result is re-derived from the step rules against
    the engine's threshold form, fiber by fiber."""
    new_stage = st.stage.succ()
    new = sym_stage(proc, new_stage, fibers=[k for k, _, _ in st.entries])
    for (key, _, old_rel), (_, new_sigma, new_rel) in zip(st.entries, new.entries):
        expected_sigma = sigma_of_rel(old_rel)
        if new_sigma != expected_sigma:
            raise UnsupportedConfiguration(
                f"Σ-step rule broken on {render_fiber_key(key)} at {new_stage}: "
                f"{new_sigma.render()} != {expected_sigma.render()}")
        _verify_rel_step(proc, key, new_stage, new_rel)
    _verify_gadget_step(proc, new, new_stage)
    return new


def _verify_rel_step(proc: SymbolicLMP, key, stage: Ordinal, rel: FiberRel):
    """The new relation on a fiber must match what its targets' new algebras
    dictate through the kernel shape."""
    if isinstance(proc, ProcAmalgam) and key[0] == "inner":
        return _verify_rel_step(proc.inner, key[1:], stage, rel)
    if isinstance(proc, ProcSerialSum) and key[0] == "summand":
        return _verify_rel_step(proc.summand(key[1]), key[2:], stage, rel)

    def demand(expected):
        if rel != expected:
            raise UnsupportedConfiguration(
                f"R-step rule broken on {render_fiber_key(key)} at {stage}: "
                f"{rel.render()} != {expected.render()}")

    if isinstance(proc, ProcU):
        demand(FiberRel.identity())  # membership tests are available outright
    elif isinstance(proc, ProcS):
        fiber = key[1]
        if fiber.is_zero():
            demand(FiberRel.identity())  # the scaling kernel separates points
        elif fiber.is_successor():
            target = proc.sigma_at(("fiber", fiber.pred()), stage)
            demand(FiberRel.identity() if target.distinguishes_measures()
                   else FiberRel.total())
        else:
            bound = (max(rel.cut_indices) + 2 if rel.tag is RelTag.CUTSREL else PROBE)
            for n in range(bound):
                target = proc.sigma_at(("fiber", fund_seq(fiber, n)), stage)
                in_cut = target.distinguishes_measures()
                if rel.tag is RelTag.IDENTITY:
                    if not in_cut:
                        raise UnsupportedConfiguration(
                            f"identity on {render_fiber_key(key)} without cut q{n}")
                elif rel.tag is RelTag.TOTAL:
                    if in_cut:
                        raise UnsupportedConfiguration(
                            f"total on {render_fiber_key(key)} despite cut q{n}")
                elif (n in rel.cut_indices) != in_cut:
                    raise UnsupportedConfiguration(
                        f"cut set mismatch on {render_fiber_key(key)} at q{n}")
    elif isinstance(proc, ProcAmalgam):
        # every cut reads the inner witness pair; they all fire together
        split_at = proc.inner.last_split()[1]
        demand(FiberRel.identity() if stage >= split_at else FiberRel.total())
    elif isinstance(proc, ProcSerialSum):
        bound = (max(rel.cut_indices) + 2 if rel.tag is RelTag.CUTSREL else PROBE)
        for m in range(bound):
            in_cut = proc.zeta(m) <= stage
            if rel.tag is RelTag.IDENTITY:
                if not in_cut:
                    raise UnsupportedConfiguration(f"identity without serial cut q{m}")
            elif rel.tag is RelTag.TOTAL:
                if in_cut:
                    raise UnsupportedConfiguration(f"total despite serial cut q{m}")
            elif (m in rel.cut_indices) != in_cut:
                raise UnsupportedConfiguration(f"serial cut set mismatch at q{m}")
    else:
        raise UnsupportedConfiguration(f"no step rule for {proc!r}")


def _verify_gadget_step(proc: SymbolicLMP, new: SymStage, stage: Ordinal):
    if not isinstance(proc, (ProcU, ProcAmalgam, ProcSerialSum)):
        return
    related = new.pair_related()
    try:
        fiber_sigma = new.sigma(("interval",))
    except KeyError:
        return  # the pair's fiber is outside the probed sample
    if related == fiber_sigma.distinguishes_measures():
        raise UnsupportedConfiguration(
            "the pair (s,t) must split exactly when its fiber turns BorelV")


def sym_zhou(proc: SymbolicLMP) -> Ordinal:
    return proc.zhou()


def membership_rel_gap(proc: SymbolicLMP, stage: Ordinal, fibers=None):
    """Fibers where 𝓡(Σ_stage) is strictly coarser than the stage relation
    𝓡ᵀ(Σ_stage); nonempty only at successor stages."""
    st = sym_stage(proc, stage, fibers)
    gaps = []
    for key, sigma, rel in st.entries:
        mem = rel_of_sigma_membership(sigma)
        if not rel.refines(mem):
            raise UnsupportedConfiguration(
                f"membership relation finer than 𝓡ᵀ on {render_fiber_key(key)}")
        if rel != mem:
            gaps.append(key)
    return gaps


def _test_cut_sigma(proc: SymbolicLMP, key, stage: Ordinal) -> FiberSigma:
    """σ-closure of the threshold tests available on a fiber at a stage:
    the algebra its kernel can read off the targets' current sections."""
    if isinstance(proc, ProcU):
        return FiberSigma.borel()  # the membership tests carry every cut
    if isinstance(proc, ProcAmalgam):
        if key[0] == "inner":
            return _test_cut_sigma(proc.inner, key[1:], stage)
        split_at = proc.inner.last_split()[1]
        return FiberSigma.borel() if stage >= split_at else FiberSigma.trivial()
    if isinstance(proc, ProcSerialSum):
        if key[0] == "summand":
            return _test_cut_sigma(proc.summand(key[1]), key[2:], stage)
        if stage >= proc.lam:
            return FiberSigma.borel()
        return FiberSigma.cuts(proc._interval_cutset(stage, strict=False))
    if isinstance(proc, ProcS):
        fiber = key[1]
        if fiber.is_zero():
            return FiberSigma.borel()  # scaling tests generate the interval algebra
        if fiber.is_successor():
            target = proc.sigma_at(("fiber", fiber.pred()), stage)
            return FiberSigma.borel() if target.distinguishes_measures() \
                else FiberSigma.trivial()
        if stage >= fiber_identity_stage(fiber):
            return FiberSigma.borel()
        rel = proc.rel_at(key, stage)
        return FiberSigma.cuts(rel.cut_indices)
    raise UnsupportedConfiguration(f"no test rule for {proc!r}")


def stage_stability_gaps(proc: SymbolicLMP, stage: Ordinal, fibers=None):
    """Fibers whose stage algebra fails closure under the symbolic test-set
    operator; empty exactly when the stage algebra is stable."""
    st = sym_stage(proc, stage, fibers)
    gaps = []
    for key, sigma, _ in st.entries:
        tests = _test_cut_sigma(proc, key, stage)
        if not tests.leq(sigma):
            gaps.append(key)
    return gaps


def limit_stage_coherent(proc: SymbolicLMP, lam: Ordinal, prefix: int, fibers=None) -> bool:
    """sym_stage at a limit equals the σ-join / meet of the stages along the
    fundamental-sequence prefix, fiber by fiber (exact, via the chain
    join/meet rules for descriptor prefixes)."""
    from .descriptors import join_sigma_chain, meet_rel_chain
    at_limit = sym_stage(proc, lam, fibers)
    keys = [k for k, _, _ in at_limit.entries]
    approx = [sym_stage(proc, fund_seq(lam, n), keys) for n in range(prefix)]
    for i, key in enumerate(keys):
        sigma_chain = [st.entries[i][1] for st in approx]
        rel_chain = [st.entries[i][2] for st in approx]
        if join_sigma_chain(sigma_chain) != at_limit.entries[i][1]:
            return False
        if meet_rel_chain(rel_chain) != at_limit.entries[i][2]:
            return False
    return True
