"""Seeded random LMP corpus for the property and oracle suites.

Instances are valid by construction: the σ-algebra comes from a random
generator family, and kernel rows are drawn constant on each sigma-atom
with row sums ≤ 1 and denominators ≤ 12.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .core import FiniteLMP, SetAlgebra, sigma_generate, validate_lmp

_LABEL_POOL = ("a", "b", "c", "d")


def random_lmp(seed: int, max_states: int = 8, max_labels: int = 3,
               denominator_cap: int = 12) -> FiniteLMP:
    # str seeds are hashed with sha512, so this stays stable across processes
    rng = random.Random(f"lmp-{seed}")
    if max_states < 2 or rng.random() < 0.1:
        n = rng.randint(1, max_states)
    else:
        n = rng.randint(2, max_states)
    states = tuple(f"s{i}" for i in range(n))
    labels = _LABEL_POOL[:rng.randint(1, max_labels)]

    n_gens = rng.randint(0, 3)
    gens = []
    for _ in range(n_gens):
        gens.append(frozenset(s for s in states if rng.random() < 0.5))
    sigma = sigma_generate(states, gens)

    kernels = {}
    n_atoms = len(sigma.atoms)
    for lab in labels:
        row_of_atom = {}
        for i_atom in range(n_atoms):
            d = rng.randint(1, denominator_cap)
            total = rng.randint(0, d)
            cuts = sorted(rng.randint(0, total) for _ in range(n_atoms - 1))
            bounds = [0] + cuts + [total]
            row_of_atom[i_atom] = tuple(
                Fraction(bounds[k + 1] - bounds[k], d) for k in range(n_atoms))
        rows = tuple(row_of_atom[sigma.atom_of(s)] for s in states)
        kernels[lab] = rows

    lmp = FiniteLMP(states, labels, sigma, kernels)
    assert not validate_lmp(lmp), "generator must produce valid instances"
    return lmp


def random_subalgebra(lmp: FiniteLMP, rng: random.Random) -> SetAlgebra:
    """A random sub-σ-algebra of lmp.sigma (random coarsening of its atoms)."""
    atoms = list(lmp.sigma.atoms)
    n_blocks = rng.randint(1, len(atoms))
    blocks: list[set[str]] = [set() for _ in range(n_blocks)]
    for a in atoms:
        blocks[rng.randrange(n_blocks)].update(a)
    return SetAlgebra(lmp.states, tuple(frozenset(b) for b in blocks if b))


def random_symmetric_relation(lmp: FiniteLMP, rng: random.Random, density: float = 0.3):
    from .core import SymRelation
    states = lmp.states
    pairs = set()
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            if rng.random() < density:
                pairs.add((states[i], states[j]))
    return SymRelation(states, frozenset(pairs))
