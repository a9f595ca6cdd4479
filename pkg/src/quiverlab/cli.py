"""Command-line entry points.

Exit codes: 0 on success / positive verdicts, 1 on negative verdicts of
check-style commands, 2 on usage errors.  ``--format structured`` switches
the report to JSON documents; the default is human-readable text.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import certcheck, obstructions, repro, seeds, sequences
from .canonical import canonical_form
from .classes import (
    FoundAcyclic,
    ImpossibleByColoring,
    NotWithinCap,
    class_contains_acyclic,
    column_gcds,
    enumerate_class,
    is_mutation_finite,
)
from .core import ExchangeMatrix, IceQuiver, ResourceLimitError, frame, mutate, statuses
from .docio import (
    DocumentError,
    as_exchange,
    as_ice,
    dump_laurent,
    dump_quiver,
    format_sequence,
    laurent_document,
    parse_laurent,
    parse_quiver,
    parse_sequence,
    quiver_document,
)

ENV_MAX_DEPTH = "QUIVERLAB_MAX_DEPTH"


def _default_depth() -> int:
    raw = os.environ.get(ENV_MAX_DEPTH, "10")
    try:
        return int(raw)
    except ValueError:
        return 10


def _read_quiver(path: str):
    return parse_quiver(Path(path).read_text())


def _emit(args, document: dict, text: str) -> None:
    if args.format == "structured":
        print(json.dumps(document, indent=2))
    else:
        print(text)


def _status_text(quiver) -> str:
    return ",".join(s.value for s in statuses(quiver))


def _cmd_mutate(args) -> int:
    matrix = _read_quiver(args.quiver)
    result = mutate(matrix, args.at)
    _emit(args, quiver_document(result), dump_quiver(result).rstrip())
    return 0


def _cmd_frame(args) -> int:
    framed = frame(as_exchange(_read_quiver(args.quiver)))
    _emit(args, quiver_document(framed), dump_quiver(framed).rstrip())
    return 0


def _cmd_replay(args) -> int:
    b = as_exchange(_read_quiver(args.quiver))
    steps = parse_sequence(args.seq)
    trace = sequences.replay(b, steps)
    doc = {
        "steps": list(steps),
        "green_steps": list(trace.green_steps),
        "colors": [[s.value for s in row] for row in trace.statuses],
        "final_state": quiver_document(trace.states[-1]),
        "all_red": trace.all_red(),
    }
    lines = [f"replay {format_sequence(steps) or '(empty)'}"]
    for idx, row in enumerate(trace.statuses):
        prefix = "start" if idx == 0 else f"after {trace.steps[idx - 1]}"
        lines.append(f"  {prefix:>9}: {','.join(s.value for s in row)}")
    lines.append(f"  all red: {trace.all_red()}")
    _emit(args, doc, "\n".join(lines))
    return 0


def _cmd_verify(args) -> int:
    b = as_exchange(_read_quiver(args.quiver))
    steps = parse_sequence(args.seq)
    verifier = {
        "green": sequences.verify_green,
        "mgs": sequences.verify_maximal_green,
        "g2r": sequences.verify_green_to_red,
    }[args.kind]
    ok = verifier(b, steps)
    _emit(args, {"kind": args.kind, "sequence": list(steps), "valid": ok},
          f"{args.kind} sequence {format_sequence(steps) or '(empty)'}: {'valid' if ok else 'invalid'}")
    return 0 if ok else 1


def _outcome_document(outcome) -> dict:
    if isinstance(outcome, sequences.Found):
        return {"outcome": "found", "sequence": list(outcome.sequence)}
    if isinstance(outcome, sequences.ExhaustedToDepth):
        return {"outcome": "exhausted", "depth": outcome.depth}
    return {
        "outcome": "obstructed",
        "certificate": obstructions.certificate_document(outcome.certificate),
    }


def _cmd_search(args) -> int:
    b = as_exchange(_read_quiver(args.quiver))
    depth = args.max_depth if args.max_depth is not None else _default_depth()
    if args.kind == "mgs":
        outcome = sequences.search_mgs(
            b,
            depth,
            prune_multiple_arrow_heads=not args.no_prune,
            check_obstructions=not args.no_obstruction_check,
            state_cap=args.state_cap,
            iterative_deepening=args.iterative_deepening,
        )
    else:
        outcome = sequences.search_g2r(b, depth, state_cap=args.state_cap)
    doc = _outcome_document(outcome)
    if isinstance(outcome, sequences.Found):
        text = f"found: {format_sequence(outcome.sequence) or '(empty)'}"
        code = 0
    elif isinstance(outcome, sequences.ExhaustedToDepth):
        text = f"exhausted to depth {outcome.depth} without finding a sequence"
        code = 1
    else:
        text = f"obstructed: multiple-arrow cycle {outcome.certificate.vertices}"
        code = 1
    _emit(args, doc, text)
    return code


def _cmd_class(args) -> int:
    b = as_exchange(_read_quiver(args.quiver))
    if args.class_command == "enumerate":
        cls = enumerate_class(b, args.max_quivers, args.max_multiplicity)
        doc = {
            "complete": cls.complete,
            "size": len(cls.representatives),
            "representatives": [quiver_document(rep) for rep in cls.representatives],
            "edges": sorted(list(e) for e in cls.edges),
        }
        if args.dump_dir:
            _dump_class(cls, Path(args.dump_dir))
        _emit(
            args,
            doc,
            f"{len(cls.representatives)} representative(s); complete: {cls.complete}"
            + (f"; dumped to {args.dump_dir}" if args.dump_dir else ""),
        )
        return 0
    if args.class_command == "finite":
        finite = is_mutation_finite(b)
        _emit(args, {"mutation_finite": finite}, f"mutation finite: {finite}")
        return 0 if finite else 1
    if args.class_command == "gcds":
        gcds = column_gcds(_read_quiver(args.quiver))
        _emit(args, {"column_gcds": list(gcds)}, "column gcds: " + ",".join(map(str, gcds)))
        return 0
    if args.class_command == "acyclic":
        result = class_contains_acyclic(b, args.max_quivers)
        if isinstance(result, FoundAcyclic):
            _emit(
                args,
                {"result": "found", "sequence": list(result.sequence)},
                f"acyclic member via {format_sequence(result.sequence) or '(empty)'}",
            )
            return 0
        if isinstance(result, ImpossibleByColoring):
            doc = obstructions.certificate_document(result.refutation)
            _emit(args, {"result": "impossible", "refutation": doc},
                  "no acyclic member anywhere in the class (coloring refutation)")
            return 1
        _emit(
            args,
            {"result": "not_within_cap", "explored": result.explored,
             "exhausted": result.exhausted},
            f"no acyclic member among {result.explored} representative(s)"
            + (" (class exhausted)" if result.exhausted else " (cap hit)"),
        )
        return 1
    raise AssertionError(args.class_command)


def _dump_class(cls, directory: Path) -> None:
    import hashlib

    directory.mkdir(parents=True, exist_ok=True)
    index = {"representatives": [], "edges": sorted(list(e) for e in cls.edges),
             "complete": cls.complete}
    for pos, rep in enumerate(cls.representatives):
        name = f"rep_{pos:04d}.json"
        payload = dump_quiver(rep)
        (directory / name).write_text(payload)
        digest = hashlib.sha256(payload.encode()).hexdigest()
        index["representatives"].append({"file": name, "canonical_sha256": digest})
    (directory / "index.json").write_text(json.dumps(index, indent=2) + "\n")


def _cmd_obstruct(args) -> int:
    b = as_exchange(_read_quiver(args.quiver))
    if args.obstruct_command == "coloring":
        result = obstructions.admissible_coloring(b)
        if isinstance(result, obstructions.Coloring):
            doc = obstructions.certificate_document(result)
            doc["quiver"] = quiver_document(b)
            arcs = " ".join(
                f"{i}->{j}:{v}" for (i, j), v in zip(result.arcs, result.values)
            )
            _emit(args, doc, f"admissible coloring: {arcs or '(no arcs)'}")
            return 0
        doc = obstructions.certificate_document(result)
        doc["quiver"] = quiver_document(b)
        cycles = "; ".join(
            f"{'oriented' if w.oriented else 'non-oriented'} {w.vertices}"
            for w in result.cycles
        )
        _emit(args, doc, f"unsatisfiable; witness cycles: {cycles}")
        return 1
    if args.obstruct_command == "cycle":
        cycle = obstructions.multiple_arrow_cycle(b)
        if cycle is None:
            _emit(args, {"cycle": None}, "no oriented cycle of multiple arrows")
            return 1
        _emit(args, {"cycle": list(cycle)}, f"multiple-arrow cycle: {cycle}")
        return 0
    if args.obstruct_command == "no-mgs":
        cert = obstructions.no_mgs_certificate(b)
        if cert is None:
            _emit(args, {"certificate": None},
                  "no certificate; absence proves nothing about existence")
            return 1
        doc = obstructions.certificate_document(cert)
        _emit(args, doc, f"no maximal green sequence: cycle {cert.vertices}")
        return 0
    if args.obstruct_command == "class-no-mgs":
        cert = obstructions.class_no_mgs_certificate(b)
        if cert is None:
            _emit(args, {"certificate": None},
                  "no class-level certificate for this quiver")
            return 1
        doc = obstructions.certificate_document(cert)
        _emit(
            args,
            doc,
            "no quiver in the mutation class has a maximal green sequence "
            f"(gcds {','.join(map(str, cert.gcds))}; "
            f"{len(cert.refutation.cycles)} witness cycles)",
        )
        return 0
    raise AssertionError(args.obstruct_command)


def _cmd_cover(args) -> int:
    quiver = as_ice(_read_quiver(args.quiver))
    if args.cover_command == "pairs":
        pairs = obstructions.covering_pairs(quiver)
        _emit(
            args,
            {"covering_pairs": [list(p) for p in pairs]},
            "covering-pair arrows: " + (" ".join(f"{i}->{j}" for i, j in pairs) or "(none)"),
        )
        return 0
    if args.cover_command == "certificate":
        result = obstructions.local_acyclicity_certificate(
            quiver,
            mutation_depth=args.mutation_depth,
            recursion_depth=args.recursion_depth,
        )
        if isinstance(result, obstructions.Unknown):
            _emit(args, {"certificate": None, "reason": result.reason},
                  f"unknown: {result.reason}")
            return 1
        doc = obstructions.certificate_document(result)
        problems = certcheck.check_certificate(doc)
        if problems:
            _emit(args, {"certificate": doc, "checker_problems": problems},
                  "certificate generated but failed the checker: " + "; ".join(problems))
            return 1
        _emit(args, doc, "locally acyclic; certificate verified by the independent checker")
        return 0
    raise AssertionError(args.cover_command)


def _cmd_upper(args) -> int:
    b = as_exchange(_read_quiver(args.quiver))
    if args.upper_command == "check":
        poly = parse_laurent(Path(args.element).read_text())
        label = ""
        if not args.skip_coprimality:
            coprime, complete = seeds.totally_coprime(b)
            scope = "complete class" if complete else "sampled class (cap hit)"
            label = f"coprimality over {scope}: {coprime}; "
            if not coprime:
                _emit(args, {"member": None, "coprime": False},
                      label + "membership criterion does not apply")
                return 2
        member = seeds.depth1_upper_membership(poly, b)
        _emit(
            args,
            {"member": member},
            label + ("element lies in all adjacent Laurent rings"
                     if member else "element fails some adjacent Laurent ring"),
        )
        return 0 if member else 1
    if args.upper_command == "grading":
        weights = parse_sequence(args.degrees)
        valid = seeds.grading_check(b, weights)
        doc: dict = {"weights": list(weights), "valid": valid}
        text = f"grading {format_sequence(weights)}: {'valid' if valid else 'invalid'}"
        code = 0 if valid else 1
        if args.element and valid:
            poly = parse_laurent(Path(args.element).read_text())
            deg = seeds.degree(poly, weights)
            doc["degree"] = deg
            text += f"; element degree: {'not homogeneous' if deg is None else deg}"
        _emit(args, doc, text)
        return code
    raise AssertionError(args.upper_command)


def _cmd_reproduce(args) -> int:
    ok = repro.run_case(args.case, sys.stdout)
    print("all claims hold" if ok else "SOME CLAIMS FAILED")
    return 0 if ok else 1


def _cmd_canonical(args) -> int:
    b = as_exchange(_read_quiver(args.quiver))
    form = canonical_form(b)
    _emit(
        args,
        {
            "matrix": quiver_document(form.matrix),
            "permutation": list(form.permutation),
        },
        dump_quiver(form.matrix).rstrip()
        + f"\npermutation: {format_sequence(form.permutation)}",
    )
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    serve(host=args.host, port=args.port, ui_dir=args.ui_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiverlab",
        description="Quiver mutation, green sequences, obstruction certificates, "
        "and exact Laurent computations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, quiver=True):
        if quiver:
            p.add_argument("--quiver", required=True, help="path to a quiver document")
        p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("mutate", help="mutate a quiver at a vertex")
    add_common(p)
    p.add_argument("--at", type=int, required=True, metavar="K")
    p.set_defaults(func=_cmd_mutate)

    p = sub.add_parser("frame", help="attach the frozen companion rows")
    add_common(p)
    p.set_defaults(func=_cmd_frame)

    p = sub.add_parser("replay", help="replay a mutation sequence on the framed quiver")
    add_common(p)
    p.add_argument("--seq", required=True)
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("verify", help="verify a green / maximal green / green-to-red sequence")
    add_common(p)
    p.add_argument("--kind", choices=("green", "mgs", "g2r"), required=True)
    p.add_argument("--seq", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", help="search for maximal green or green-to-red sequences")
    add_common(p)
    p.add_argument("--kind", choices=("mgs", "g2r"), required=True)
    p.add_argument("--max-depth", type=int, default=None,
                   help=f"default from ${ENV_MAX_DEPTH} (fallback 10)")
    p.add_argument("--state-cap", type=int, default=200_000)
    p.add_argument("--no-prune", action="store_true",
                   help="disable multiple-arrow-head pruning (mgs only)")
    p.add_argument("--no-obstruction-check", action="store_true")
    p.add_argument("--iterative-deepening", action="store_true")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("class", help="mutation-class operations")
    class_sub = p.add_subparsers(dest="class_command", required=True)
    for name, extra in (
        ("enumerate", True),
        ("finite", False),
        ("gcds", False),
        ("acyclic", True),
    ):
        q = class_sub.add_parser(name)
        add_common(q)
        if extra:
            q.add_argument("--max-quivers", type=int, default=10_000)
        if name == "enumerate":
            q.add_argument("--max-multiplicity", type=int, default=32)
            q.add_argument("--dump-dir")
        q.set_defaults(func=_cmd_class)

    p = sub.add_parser("obstruct", help="obstruction certificates")
    ob_sub = p.add_subparsers(dest="obstruct_command", required=True)
    for name in ("coloring", "cycle", "no-mgs", "class-no-mgs"):
        q = ob_sub.add_parser(name)
        add_common(q)
        q.set_defaults(func=_cmd_obstruct)

    p = sub.add_parser("cover", help="covering pairs and local-acyclicity certificates")
    cov_sub = p.add_subparsers(dest="cover_command", required=True)
    q = cov_sub.add_parser("pairs")
    add_common(q)
    q.set_defaults(func=_cmd_cover)
    q = cov_sub.add_parser("certificate")
    add_common(q)
    q.add_argument("--mutation-depth", type=int, default=2)
    q.add_argument("--recursion-depth", type=int, default=None)
    q.set_defaults(func=_cmd_cover)

    p = sub.add_parser("upper", help="upper-cluster-algebra membership and gradings")
    up_sub = p.add_subparsers(dest="upper_command", required=True)
    q = up_sub.add_parser("check")
    add_common(q)
    q.add_argument("--element", required=True, help="path to a Laurent document")
    q.add_argument("--skip-coprimality", action="store_true")
    q.set_defaults(func=_cmd_upper)
    q = up_sub.add_parser("grading")
    add_common(q)
    q.add_argument("--degrees", required=True, help="comma-separated weights")
    q.add_argument("--element", help="optionally report this element's degree")
    q.set_defaults(func=_cmd_upper)

    p = sub.add_parser("canonical", help="canonical form under vertex relabeling")
    add_common(p)
    p.set_defaults(func=_cmd_canonical)

    p = sub.add_parser("reproduce", help="re-run a shipped case end to end")
    p.add_argument("case", choices=repro.CASES)
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--port", type=int, default=8775)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", default=None, help="static directory for the explorer UI")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
