"""Symbolic execution of the ordinal-indexed counterexample processes."""

from .complexity import FiberwiseSet, IntervalSet, complexity, in_product_algebra
from .descriptors import (
    ALL_RATIONALS,
    FiberRel,
    FiberSigma,
    MeasurePair,
    RelTag,
    SigmaTag,
    join_sigma_chain,
    meet_rel_chain,
    rel_of_sigma_membership,
    sigma_of_rel,
)
from .schemas import (
    DEFAULT_MEASURE,
    ProcAmalgam,
    ProcS,
    ProcSerialSum,
    ProcU,
    SymbolicLMP,
    amalgamate,
    build_S,
    build_U,
    fiber_identity_stage,
    fiber_unveil_stage,
    ordinal_grid,
    serial_sum,
)
from .stages import (
    SymStage,
    limit_stage_coherent,
    membership_rel_gap,
    stage_stability_gaps,
    sym_stage,
    sym_step,
    sym_zhou,
)

__all__ = [
    "ALL_RATIONALS", "DEFAULT_MEASURE", "FiberRel", "FiberSigma", "FiberwiseSet",
    "IntervalSet", "MeasurePair", "ProcAmalgam", "ProcS", "ProcSerialSum", "ProcU",
    "RelTag", "SigmaTag", "SymStage", "SymbolicLMP", "amalgamate", "build_S",
    "build_U", "complexity", "fiber_identity_stage", "fiber_unveil_stage",
    "in_product_algebra", "join_sigma_chain", "limit_stage_coherent",
    "meet_rel_chain", "membership_rel_gap", "ordinal_grid",
    "rel_of_sigma_membership", "serial_sum", "sigma_of_rel",
    "stage_stability_gaps", "sym_stage", "sym_step", "sym_zhou",
]
