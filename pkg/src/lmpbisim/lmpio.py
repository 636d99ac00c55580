"""Process files and canonical JSON reports.

A process file is a UTF-8 JSON object with fields

  states            array of distinct state names
  labels            array of distinct label names
  sigma_generators  array of state-name arrays; "powerset" or omitted
                    means the full powerset
  kernels           label -> state -> atom-index-as-string -> "p/q"
  kernels_pointwise label -> state -> state -> "p/q"; accepted only when
                    sigma is the powerset

Atom indices refer to the canonical atom order computed from the
generators; missing kernel entries are 0.  The writer always emits the
atoms themselves as generators (regenerating from atoms is idempotent)
and serializes canonically: sorted keys, two-space indent, rationals as
"p/q", zero entries omitted.  Re-serializing a written file is therefore
byte-identical.
"""

from __future__ import annotations

import hashlib
import json

from .core import FiniteLMP, SetAlgebra, sigma_generate
from .errors import FileFormatError
from .rational import ZERO, format_rational, parse_rational

ENGINE_VERSION = "0.1.0"


def _require(cond, message):
    if not cond:
        raise FileFormatError(message)


def lmp_from_obj(obj) -> FiniteLMP:
    _require(isinstance(obj, dict), "top level must be an object")
    states = obj.get("states")
    _require(isinstance(states, list) and states, "states must be a nonempty array")
    _require(all(isinstance(s, str) for s in states), "state names must be strings")
    _require(len(set(states)) == len(states), "state names must be distinct")
    labels = obj.get("labels")
    _require(isinstance(labels, list), "labels must be an array")
    _require(all(isinstance(a, str) for a in labels), "label names must be strings")
    _require(len(set(labels)) == len(labels), "label names must be distinct")
    states = tuple(states)
    labels = tuple(labels)

    gens = obj.get("sigma_generators", "powerset")
    if gens == "powerset":
        sigma = SetAlgebra.powerset(states)
    else:
        _require(isinstance(gens, list), 'sigma_generators must be an array or "powerset"')
        for g in gens:
            _require(isinstance(g, list) and all(isinstance(s, str) for s in g),
                     "each generator must be an array of state names")
            _require(set(g) <= set(states), f"generator {g} mentions unknown states")
        sigma = sigma_generate(states, [frozenset(g) for g in gens])

    kernels = {lab: [[ZERO] * len(sigma.atoms) for _ in states] for lab in labels}

    table = obj.get("kernels", {})
    _require(isinstance(table, dict), "kernels must be an object")
    for lab, per_state in table.items():
        _require(lab in labels, f"kernel for unknown label {lab!r}")
        _require(isinstance(per_state, dict), "kernel entry must be an object")
        for s, row in per_state.items():
            _require(s in states, f"kernel row for unknown state {s!r}")
            _require(isinstance(row, dict), "kernel row must be an object")
            for atom_key, value in row.items():
                try:
                    j = int(atom_key)
                except ValueError:
                    raise FileFormatError(f"atom index {atom_key!r} is not an integer") from None
                _require(0 <= j < len(sigma.atoms), f"atom index {j} out of range")
                v = parse_rational(value)
                _require(v >= 0, "kernel entries must be non-negative")
                kernels[lab][states.index(s)][j] = v

    pointwise = obj.get("kernels_pointwise")
    if pointwise is not None:
        _require(len(sigma.atoms) == len(states),
                 "kernels_pointwise requires sigma to be the powerset")
        _require(isinstance(pointwise, dict), "kernels_pointwise must be an object")
        for lab, per_state in pointwise.items():
            _require(lab in labels, f"kernel for unknown label {lab!r}")
            for s, row in per_state.items():
                _require(s in states, f"kernel row for unknown state {s!r}")
                for t, value in row.items():
                    _require(t in states, f"kernel target {t!r} unknown")
                    v = parse_rational(value)
                    _require(v >= 0, "kernel entries must be non-negative")
                    j = sigma.atom_of(t)
                    kernels[lab][states.index(s)][j] = v

    frozen = {lab: tuple(tuple(row) for row in rows) for lab, rows in kernels.items()}
    try:
        return FiniteLMP(states, labels, sigma, frozen)
    except ValueError as exc:
        raise FileFormatError(str(exc)) from exc


def lmp_to_obj(lmp: FiniteLMP) -> dict:
    kernels = {}
    for lab in lmp.labels:
        per_state = {}
        for i, s in enumerate(lmp.states):
            row = {str(j): format_rational(v)
                   for j, v in enumerate(lmp.kernels[lab][i]) if v != 0}
            if row:
                per_state[s] = row
        if per_state:
            kernels[lab] = per_state
    return {
        "states": list(lmp.states),
        "labels": list(lmp.labels),
        "sigma_generators": [sorted(a) for a in lmp.sigma.atoms],
        "kernels": kernels,
    }


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_lmp(path) -> FiniteLMP:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            obj = json.load(handle)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"{path}: {exc}") from exc
    return lmp_from_obj(obj)


def save_lmp(lmp: FiniteLMP, path):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(canonical_json(lmp_to_obj(lmp)))


def digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def digest_file(path) -> str:
    with open(path, "rb") as handle:
        return digest_bytes(handle.read())
