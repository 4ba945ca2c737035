"""Command-line interface: ``treepatterns <command> [options]``.

Exit codes: 0 success, 1 input error, 2 verification counterexample,
3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import branching, covering, structure, transforms, verify
from .enumerate import iter_patterns
from .errors import ConvergenceError, PatternError, StructureError, VerificationFailure
from .numerics import lambda_n
from .pattern import Pattern, canonical_form, parse, serialize

EXIT_OK, EXIT_INPUT, EXIT_COUNTEREXAMPLE, EXIT_CONVERGENCE = 0, 1, 2, 3


def _read_pattern(path: str) -> Pattern:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse(text)


def _csv_rows(patterns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["pattern", "entropy", "zero_entropy", "trivial", "reducible", "pi_reducible"])
    for P in patterns:
        c = structure.classify(P)
        w.writerow([serialize(P), repr(c.entropy), c.zero_entropy, c.trivial, c.reducible, c.pi_reducible is not None])
    return buf.getvalue()


def cmd_analyze(args):
    P = _read_pattern(args.input)
    d = structure.classify(P).to_dict()
    d["pattern"] = P.to_dict()
    bs = structure.maximal_trivial_structure(P)
    d["maximal_trivial_blocks"] = bs.p if bs else None
    d["scrambled"] = [list(c) for c in structure.scrambled_components(P)]
    return d


def cmd_entropy(args):
    P = _read_pattern(args.input)
    d = {"entropy": covering.entropy(P, args.tol), "zero_entropy": covering.is_zero_entropy(P)}
    if args.emit_matrix:
        d.update(covering.transition_matrix(P).to_dict())
    return d


def cmd_enumerate(args):
    stream = iter_patterns(args.n, workers=args.workers, allow_large=args.allow_large)
    if args.count_only:
        return sum(1 for _ in stream)
    if args.format == "csv":
        return _csv_rows(stream)
    return "".join(serialize(P) + "\n" for P in stream)


def cmd_openings(args):
    P = _read_pattern(args.input)
    return [
        {"point": o.point, "joined": [list(c) for c in o.joined], "pattern": o.pattern.to_dict()}
        for o in transforms.openings(P)
    ]


def cmd_collapse(args):
    return structure.collapse_sequence(_read_pattern(args.input)).to_dict()


def cmd_branching(args):
    P = _read_pattern(args.input)
    S = branching.branching_sequence(P, args.x)
    return {
        "sequence": branching.to_json_list(S),
        "fully_reduced": branching.to_json_list(branching.fully_reduce(S)),
        "bidirectional": len(S) > 1 and S[-2][1] != S[-1][1],
        "flower": branching.flower_of(P, args.x).to_dict(),
    }


def cmd_qn(args):
    return transforms.q_pattern(args.n).to_dict()


def cmd_extend(args):
    return transforms.p_extension(_read_pattern(args.input), args.p).to_dict()


def cmd_reverse(args):
    return transforms.time_reverse(_read_pattern(args.input)).to_dict()


def cmd_lambda(args):
    return lambda_n(args.n, args.tol)


def cmd_verify(args):
    w = args.workers
    if args.claim == "min-entropy":
        rep = verify.verify_min_entropy(args.n, args.tol, workers=w)
    elif args.claim == "reducible-min":
        rep = verify.verify_reducible_min(args.n, args.tol, workers=w)
    elif args.claim == "pi-reducibility":
        rep = verify.verify_pi_reducibility_theorem(args.n, workers=w)
    elif args.claim == "splitting":
        rep = verify.run_splitting_suite(args.n or 24, workers=w)
    else:
        rep = verify.run_structure_suite(args.n or 7, workers=w)
    return rep.to_dict()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treepatterns", description="Periodic tree patterns and their entropy.")
    ap.add_argument("--out", help="write the result here instead of stdout")
    ap.add_argument("--format", choices=["json", "csv"], default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help, pattern_input=False):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        if pattern_input:
            p.add_argument("--input", required=True, help="pattern JSON file, or - for stdin")
        return p

    add("analyze", cmd_analyze, "classify a pattern", True)
    p = add("entropy", cmd_entropy, "topological entropy", True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--emit-matrix", action="store_true", help="include basic paths and the 0-1 matrix")
    p = add("enumerate", cmd_enumerate, "all n-periodic patterns up to rotation (JSONL)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--allow-large", action="store_true", help="permit n > 9")
    p.add_argument("--workers", type=int, default=1)
    add("openings", cmd_openings, "all openings of a pattern", True)
    add("collapse", cmd_collapse, "sequence of combinatorial collapses", True)
    p = add("branching", cmd_branching, "branching sequence around a point", True)
    p.add_argument("--x", type=int, default=0)
    p = add("qn", cmd_qn, "the pattern Q_n")
    p.add_argument("--n", type=int, required=True)
    p = add("extend", cmd_extend, "canonical p-extension", True)
    p.add_argument("--p", type=int, required=True)
    add("reverse", cmd_reverse, "time reversal, canonicalized", True)
    p = add("lambda", cmd_lambda, "largest real root of x^n - 2x - 1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p = add("verify", cmd_verify, "run a verification harness")
    p.add_argument("claim", choices=["min-entropy", "reducible-min", "pi-reducibility", "splitting", "structure"])
    p.add_argument("--n", type=int)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--workers", type=int, default=1)
    return ap


def _render(result, fmt: str) -> str:
    if isinstance(result, str):
        return result
    if fmt == "csv" and isinstance(result, dict) and "argmin" in result:
        return _csv_rows(Pattern(d["period"], tuple(map(tuple, d["components"]))) for d in result["argmin"])
    if isinstance(result, float):
        return repr(result) + "\n"
    return json.dumps(result, separators=(",", ":")) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "verify" and args.claim in ("min-entropy", "reducible-min", "pi-reducibility") and args.n is None:
        ap.error(f"verify {args.claim} needs --n")
    try:
        out = _render(args.func(args), args.format)
    except VerificationFailure as exc:
        cx = exc.counterexample
        print(json.dumps({"error": str(exc), "counterexample": canonical_form(cx).to_dict() if cx else None}))
        return EXIT_COUNTEREXAMPLE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (PatternError, StructureError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
