"""Command-line front end.

Exit codes: 0 success, 1 domain error (reported structurally), 2 usage
error.  With --json every command prints one canonical report object
(sorted keys, rationals as "p/q"); reports are bit-exact for a fixed
input and seed, so timing is only included when --timing is passed.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from .core import validate_lmp
from .errors import LmpError


class UsageError(Exception):
    """Bad command-line usage that argparse cannot express (exit 2)."""
from .generator import random_lmp
from .lmpio import (
    canonical_json,
    digest_bytes,
    digest_file,
    lmp_to_obj,
    load_lmp,
    save_lmp,
)
from .logic import eval_formula, parse_formula
from .logic import logic_sigma
from .operators import (
    brute_smallest_stable,
    brute_state_bisim,
    event_bisim,
    state_bisim,
    zhou_iterate,
)
from .ordinal import ord_parse, ord_print
from .rational import parse_rational
from .symbolic import (
    MeasurePair,
    amalgamate,
    build_S,
    build_U,
    serial_sum,
    sym_stage,
    sym_zhou,
)
from .symbolic.stages import render_fiber_key


def _classes_payload(rel):
    return [sorted(c) for c in rel.classes]


def _atoms_payload(alg):
    return [sorted(a) for a in alg.atoms]


def _emit(args, result, input_digest, started):
    if args.json:
        report = {
            "command": args.command_echo,
            "engine_version": __version__,
            "input_digest": input_digest,
            "result": result,
        }
        if args.timing:
            report["timing_seconds"] = round(time.monotonic() - started, 6)
        sys.stdout.write(canonical_json(report))
    else:
        _render_human(result)
        if args.timing:
            print(f"[{time.monotonic() - started:.3f}s]")


def _is_partition(value):
    return (isinstance(value, list) and value
            and all(isinstance(b, list) and all(isinstance(s, str) for s in b)
                    for b in value))


def _render_human(result, indent=""):
    if isinstance(result, dict):
        for key in result:
            value = result[key]
            if _is_partition(value):
                blocks = " ".join("{" + ",".join(b) + "}" for b in value)
                print(f"{indent}{key}: {blocks}")
            elif isinstance(value, (dict, list)):
                print(f"{indent}{key}:")
                _render_human(value, indent + "  ")
            else:
                print(f"{indent}{key}: {value}")
    elif isinstance(result, list):
        for value in result:
            if isinstance(value, (dict, list)):
                _render_human(value, indent + "  ")
            else:
                print(f"{indent}{value}")
    else:
        print(f"{indent}{result}")


def cmd_validate(args):
    lmp = load_lmp(args.file)
    issues = validate_lmp(lmp)
    result = {
        "valid": not issues,
        "violations": [
            {"kind": i.kind, "label": i.label, "where": i.where, "detail": i.detail}
            for i in issues
        ],
    }
    _emit(args, result, digest_file(args.file), args.started)
    return 0 if not issues else 1


def cmd_bisim(args):
    lmp = load_lmp(args.file)
    rel = event_bisim(lmp) if args.kind == "event" else state_bisim(lmp)
    _emit(args, {"kind": args.kind, "classes": _classes_payload(rel)},
          digest_file(args.file), args.started)
    return 0


def cmd_zhou(args):
    lmp = load_lmp(args.file)
    chain = zhou_iterate(lmp)
    result = {
        "stages": [
            {"index": k, "relation": _classes_payload(r), "sigma_atoms": _atoms_payload(a)}
            for k, r, a in chain.stages
        ] if args.trace else [
            {"index": chain.stages[-1][0],
             "relation": _classes_payload(chain.stages[-1][1]),
             "sigma_atoms": _atoms_payload(chain.stages[-1][2])}
        ],
        "zhou_index": chain.zhou_index,
    }
    if chain.zhou_index > 0:
        result["note"] = "zhou_index above 0 on a finite instance is a notable finding"
    _emit(args, result, digest_file(args.file), args.started)
    return 0


def cmd_logic(args):
    lmp = load_lmp(args.file)
    formula = parse_formula(args.formula)
    sat = eval_formula(lmp, formula)
    if args.state is not None:
        if args.state not in lmp.states:
            raise LmpError(f"unknown state {args.state!r}")
        result = {"formula": formula.render(), "state": args.state,
                  "holds": args.state in sat}
    else:
        result = {"formula": formula.render(), "satisfying": sorted(sat)}
    _emit(args, result, digest_file(args.file), args.started)
    return 0


def cmd_oracle(args):
    lmp = load_lmp(args.file)
    fast_rel = state_bisim(lmp)
    brute_rel = brute_state_bisim(lmp)
    fast_alg = logic_sigma(lmp)
    brute_alg = brute_smallest_stable(lmp)
    result = {
        "state_bisim": _classes_payload(fast_rel),
        "brute_state_bisim": _classes_payload(brute_rel),
        "state_bisim_match": fast_rel == brute_rel,
        "logic_sigma": _atoms_payload(fast_alg),
        "brute_smallest_stable": _atoms_payload(brute_alg),
        "logic_sigma_match": fast_alg == brute_alg,
    }
    _emit(args, result, digest_file(args.file), args.started)
    return 0 if result["state_bisim_match"] and result["logic_sigma_match"] else 1


def cmd_gen(args):
    if not (1 <= args.states <= 12 and 1 <= args.labels <= 4):
        print("error: --states must be in 1..12 and --labels in 1..4", file=sys.stderr)
        return 2
    lmp = random_lmp(args.seed, max_states=args.states, max_labels=args.labels)
    save_lmp(lmp, args.out)
    obj = lmp_to_obj(lmp)
    _emit(args, {"out": args.out, "states": obj["states"], "labels": obj["labels"]},
          digest_bytes(canonical_json(obj).encode("utf-8")), args.started)
    return 0


def _sym_process(args):
    measure = MeasurePair(parse_rational(args.p0), parse_rational(args.p1))
    if args.schema == "u":
        return build_U(measure)
    if args.schema == "s":
        if args.beta is None:
            raise UsageError("sym s requires --beta")
        return build_S(ord_parse(args.beta), measure)
    if args.schema == "amalgam":
        if args.inner_beta is None:
            raise UsageError("sym amalgam requires --inner-beta")
        return amalgamate(build_S(ord_parse(args.inner_beta), measure))
    if args.schema == "serial":
        if args.lam is None:
            raise UsageError("sym serial requires --lambda")
        return serial_sum(ord_parse(args.lam), measure)
    raise LmpError(f"unknown symbolic schema {args.schema!r}")


def cmd_sym(args):
    proc = _sym_process(args)
    action = "trace" if args.trace_flag else "zhou"
    digest = digest_bytes(" ".join(args.command_echo).encode("utf-8"))
    if action == "zhou":
        result = {"schema": proc.render(), "zhou": ord_print(sym_zhou(proc))}
        if hasattr(proc, "witness"):
            result["witness"] = proc.witness()
        if not args.json:
            print(result["zhou"])
            return 0
        _emit(args, result, digest, args.started)
        return 0
    if action == "trace":
        stage = ord_parse(args.stage) if args.stage else ord_parse("0")
        st = sym_stage(proc, stage)
        result = {
            "schema": proc.render(),
            "stage": ord_print(stage),
            "fibers": [
                {"fiber": render_fiber_key(k), "sigma": s.render(), "rel": r.render()}
                for k, s, r in st.entries
            ],
            "gadgets": [{"name": n, "status": s} for n, s in st.gadgets],
        }
        if not args.json:
            for line in st.render_lines():
                print(line)
            return 0
        _emit(args, result, digest, args.started)
        return 0
    raise LmpError(f"unknown sym action {action!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lmpbisim",
        description="bisimilarity and Zhou-ordinal chains for labelled Markov processes")
    parser.add_argument("--json", action="store_true", help="canonical JSON report")
    parser.add_argument("--timing", action="store_true", help="include timing in reports")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a process file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bisim", help="event or state bisimilarity classes")
    p.add_argument("--kind", choices=["event", "state"], required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_bisim)

    p = sub.add_parser("zhou", help="iterate the refinement chain to its fixpoint")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="include every stage")
    p.set_defaults(func=cmd_zhou)

    p = sub.add_parser("logic", help="evaluate a modal formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--state")
    p.add_argument("file")
    p.set_defaults(func=cmd_logic)

    p = sub.add_parser("oracle", help="run the brute-force oracles and diff")
    p.add_argument("file")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a seeded random process file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--states", type=int, default=8)
    p.add_argument("--labels", type=int, default=3)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sym", help="symbolic counterexample engine")
    p.add_argument("schema", choices=["u", "s", "amalgam", "serial"])
    p.add_argument("--zhou", dest="zhou_flag", action="store_true")
    p.add_argument("--trace", dest="trace_flag", action="store_true")
    p.add_argument("--stage", help="ordinal stage for trace, e.g. w^2+3")
    p.add_argument("--beta", help="fiber bound for the s schema")
    p.add_argument("--inner-beta", dest="inner_beta",
                   help="fiber bound of the inner process to amalgamate")
    p.add_argument("--lambda", dest="lam", help="limit ordinal for the serial sum")
    p.add_argument("--p0", default="1/3")
    p.add_argument("--p1", default="2/3")
    p.set_defaults(func=cmd_sym)

    return parser


def _normalize_sym_actions(argv):
    """Allow `sym <schema> zhou|trace` next to the flag spellings."""
    if "sym" not in argv:
        return argv
    out = []
    for token in argv:
        if token in ("zhou", "trace") and "sym" in out:
            out.append("--" + token)
        else:
            out.append(token)
    return out


def main(argv=None) -> int:
    argv = _normalize_sym_actions(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    args.command_echo = ["lmpbisim"] + argv
    args.started = time.monotonic()
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (LmpError, ValueError) as exc:
        error = {"error": type(exc).__name__, "message": str(exc)}
        if args.json:
            sys.stdout.write(canonical_json(error))
        else:
            print(f"error ({error['error']}): {error['message']}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
