"""Command line entry point.  Exit codes: 0 all pass, 1 violation, 2 usage error."""

from __future__ import annotations

import argparse
import sys

from .arrangement import dump_arrangement
from .catalog import catalog, load_target, lookup, random_arrangement
from .cover import min_cover
from .harness import (Options, analyze, render_facts_records, render_facts_text, render_records,
                      render_report_text, suite_ids, verify)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "records"], default=argparse.SUPPRESS)
    common.add_argument("--max-degree", type=int, default=argparse.SUPPRESS, metavar="K")

    p = argparse.ArgumentParser(prog="linarr", parents=[common],
                                description="Exact computations with plane line arrangements.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="one-page summary of an arrangement")
    a.add_argument("target", help="FILE, catalog:NAME or random:SEED,LINES")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", help="suite id or 'full'")
    v.add_argument("target")
    v.add_argument("--partner", help="second arrangement for the thmD2 suite")

    c = sub.add_parser("cover", parents=[common], help="minimal line covers N and N0")
    c.add_argument("target")

    cat = sub.add_parser("catalog", parents=[common], help="list or show catalog entries")
    cat.add_argument("action", choices=["list", "show"])
    cat.add_argument("name", nargs="?")

    r = sub.add_parser("random", parents=[common], help="print a random rational arrangement")
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--lines", type=int, required=True)
    r.add_argument("--max-coeff", type=int, default=3)
    return p


class UsageError(Exception):
    pass


def _load(target: str):
    try:
        return load_target(target)
    except (KeyError, LookupError, OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def run(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    fmt = getattr(args, "format", "text")
    max_degree = getattr(args, "max_degree", None)
    try:
        if args.command == "analyze":
            facts = analyze(_load(args.target), max_degree)
            print(render_facts_records(facts) if fmt == "records" else render_facts_text(facts))
            return 0
        if args.command == "verify":
            if args.suite not in suite_ids():
                raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(suite_ids())}")
            A = _load(args.target)
            partner = _load(args.partner) if args.partner else None
            reports = verify(A, args.suite, Options(max_degree=max_degree, partner=partner))
            if fmt == "records":
                print(render_records([row for rep in reports for row in rep.records()]))
            else:
                print("\n\n".join(render_report_text(rep) for rep in reports))
            return 0 if all(rep.ok for rep in reports) else 1
        if args.command == "cover":
            A = _load(args.target)
            res = min_cover(A)
            rows = [("N", res.N), ("N0", res.N0),
                    ("witnessN", "; ".join(map(str, res.witnessN))),
                    ("witnessN0", "; ".join(map(str, res.witnessN0)))]
            sep = "=" if fmt == "records" else ": "
            print("\n".join(f"{k}{sep}{v}" for k, v in rows))
            return 0
        if args.command == "catalog":
            if args.action == "list":
                for e in catalog():
                    print(f"{e.name}\t{e.description}")
                return 0
            if not args.name:
                raise UsageError("catalog show needs a NAME")
            try:
                A = lookup(args.name)
            except (KeyError, LookupError) as exc:
                raise UsageError(str(exc)) from exc
            print(dump_arrangement(A), end="")
            return 0
        if args.command == "random":
            if args.lines < 3:
                raise UsageError("--lines must be at least 3")
            print(dump_arrangement(random_arrangement(args.seed, args.lines, args.max_coeff)), end="")
            return 0
    except UsageError as exc:
        print(f"linarr: error: {exc}", file=sys.stderr)
        return 2
    return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
