"""Command-line front end.

Subcommands: ``derive`` (print a constraint set), ``verify`` (run a named
acceptance suite), ``search`` (find an integral constant), ``emit`` (print
a golden by id).  Exit codes: 0 success, 1 verification failure, 2 usage
error, 3 search exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import goldens, reduction, suites, susy
from .formatting import format_poly, poly_to_dict
from .parsing import parse

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_SEARCH_EXHAUSTED = 3


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _condition_label(stage: str, k: int) -> str:
    return f"Ibar_{k}" if stage == "transformed" else f"I_{k}"


def cmd_derive(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    n, stage, preset = args.n, args.stage, args.preset
    if stage in ("raw", "eliminated") and not 2 <= n <= 8:
        parser.error(f"--n must be in 2..8 for stage {stage}")
    if stage == "transformed":
        if n not in (2, 3, 4):
            parser.error("--n must be 2, 3 or 4 for the transformed stage")
        if preset == "footnote-alt" and n != 4:
            parser.error("the footnote-alt preset exists only for --n 4")
    try:
        if stage == "raw":
            cs = susy.derive_conditions(susy.build_system(n))
        elif stage == "eliminated":
            cs = susy.eliminate_potentials(susy.derive_conditions(susy.build_system(n)))
        else:
            cs = susy.transformed_conditions(n, preset)
    except susy.SusyError as exc:
        parser.error(str(exc))

    if args.format == "json":
        payload = {
            "n": n,
            "stage": stage,
            "preset": preset if stage == "transformed" else None,
            "conditions": [
                {
                    "k": k,
                    "note": cs.scale_notes.get(k, ""),
                    "poly": poly_to_dict(p),
                }
                for k, p in cs.items()
            ],
        }
        _write(json.dumps(payload, separators=(",", ":")), args.out)
        return EXIT_OK
    lines = []
    for k, p in cs.items():
        note = cs.scale_notes.get(k)
        suffix = f"   [{note}]" if note else ""
        lines.append(f"{_condition_label(stage, k)} = {format_poly(p, args.format)}{suffix}")
    _write("\n".join(lines), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    reports = suites.run_suite(args.suite)
    if args.format == "json":
        payload = {
            "passed": all(r.passed for r in reports),
            "suites": [r.to_dict() for r in reports],
        }
        _write(json.dumps(payload, separators=(",", ":")), args.out)
    else:
        lines = []
        for rep in reports:
            for res in rep.results:
                mark = "ok" if res.passed else "FAIL"
                detail = f"  ({res.detail})" if res.detail else ""
                lines.append(f"[{mark}] {rep.suite}: {res.name}{detail}")
            lines.append(
                f"suite {rep.suite}: "
                f"{sum(r.passed for r in rep.results)}/{len(rep.results)} passed"
            )
        _write("\n".join(lines), args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED


def cmd_search(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    n, k, preset = args.n, args.k, args.preset
    if n not in (2, 3, 4):
        parser.error("--n must be 2, 3 or 4")
    if preset == "generic":
        parser.error("search needs a numeric preset (paper or footnote-alt)")
    if preset == "footnote-alt" and n != 4:
        parser.error("the footnote-alt preset exists only for --n 4")
    if not 1 <= k <= n - 1:
        parser.error(f"--k must be in 1..{n - 1} for --n {n}")
    try:
        found = suites.run_search(n, k, preset, policy=args.policy,
                                  max_deriv=args.deriv_bound)
    except reduction.SearchExhausted as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        return EXIT_SEARCH_EXHAUSTED

    display_note = ""
    for e in goldens.corpus().values():
        if e.kind == "integral" and e.n == n and e.preset == preset and e.data["k"] == k:
            display_note = (
                f"display = {e.data['prefactor']}*J_{k} = ({e.scale()}) * J"
                + (" + recorded completion" if "completion" in e.data else "")
            )
    if args.format == "json":
        payload = {
            "n": n,
            "k": k,
            "preset": preset,
            "J": poly_to_dict(found.j_poly),
            "multipliers": {
                str(j): {str(o): poly_to_dict(c) for o, c in op.coeffs.items()}
                for j, op in found.multipliers.items()
            },
            "display": display_note,
        }
        _write(json.dumps(payload, separators=(",", ":")), args.out)
        return EXIT_OK
    lines = [f"J_{k} = {format_poly(found.j_poly, args.format)}"]
    for j, op in sorted(found.multipliers.items()):
        lines.append(f"L[{k},{j}] (on Ibar_{j}) = {op!r}")
    for rel, mult in found.relation_multipliers:
        lines.append(f"relation multiplier: ({format_poly(mult)}) * ({format_poly(rel)})")
    if display_note:
        lines.append(display_note)
    if n == 4 and k == 1:
        lines.append("degenerate case: Ibar_1 = u0' integrates to u0 = 2*C1")
    _write("\n".join(lines), args.out)
    return EXIT_OK


def cmd_emit(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    try:
        e = goldens.entry(args.id)
    except KeyError as exc:
        parser.error(str(exc))
    if args.format == "json":
        payload = {"id": e.id, "n": e.n, "kind": e.kind, "provenance": e.provenance}
        payload.update(e.data)
        if "expression" in e.data:
            payload["poly"] = poly_to_dict(e.poly())
        _write(json.dumps(payload, separators=(",", ":")), args.out)
        return EXIT_OK
    lines = [f"{e.id} ({e.kind}, n={e.n}): {e.provenance}"]
    if "expression" in e.data:
        lines.append(format_poly(e.poly(), args.format))
    elif "coeffs" in e.data:
        dsym = "\\del" if args.format == "latex" else "d"
        for order in sorted((int(o) for o in e.data["coeffs"]), reverse=True):
            expr = e.data["coeffs"][str(order)]
            lines.append(f"{dsym}^{order}: {format_poly(parse(expr, e.n), args.format)}")
    else:
        lines.append(json.dumps(e.data, indent=1))
    _write("\n".join(lines), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nfoldsusy",
        description="Exact constraint engine for N-fold supersymmetric quantum mechanics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = dict(choices=("plain", "latex", "json"), default="plain")

    p = sub.add_parser("derive", help="derive and print a constraint set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stage", choices=("raw", "eliminated", "transformed"), default="raw")
    p.add_argument("--preset", choices=("paper", "footnote-alt", "generic"), default="paper")
    p.add_argument("--format", **fmt)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=("all",) + suites.SUITE_NAMES, default="all")
    p.add_argument("--format", **fmt)
    p.add_argument("--out")

    p = sub.add_parser("search", help="search for an integral constant")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--preset", choices=("paper", "footnote-alt", "generic"), default="paper")
    p.add_argument("--policy", choices=("multiplicative", "first-order"),
                   default="multiplicative")
    p.add_argument("--deriv-bound", type=int, default=None)
    p.add_argument("--format", **fmt)
    p.add_argument("--out")

    p = sub.add_parser("emit", help="print a golden corpus entry by id")
    p.add_argument("--id", required=True)
    p.add_argument("--format", **fmt)
    p.add_argument("--out")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "derive": cmd_derive,
        "verify": cmd_verify,
        "search": cmd_search,
        "emit": cmd_emit,
    }
    return handlers[args.command](args, parser)


if __name__ == "__main__":
    sys.exit(main())
