"""``pearl-blowup`` command line.

Exit codes: 0 success, 1 invalid input or refused blow-up, 2 unparseable input.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from pearl_blowup.errors import ParseError, PearlBlowupError, UnknownExample
from pearl_blowup.workbench.document import read_spec
from pearl_blowup.workbench.fixtures import EXAMPLES, builtin_example
from pearl_blowup.workbench.report import COMMANDS, run_report

log = logging.getLogger("pearl_blowup")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pearl-blowup",
        description="Pearl and Floer homology of monotone Lagrangians and of their "
                    "proper transforms in a one-point blow-up.")
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--example", metavar="NAME", help=f"built-in fixture: {', '.join(EXAMPLES)}")
    src.add_argument("--input", metavar="FILE", help="JSON input document")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.add_argument("--verbose", action="store_true", help="log pipeline steps to stderr")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if not args.verbose:
        return _run(args)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO)
    try:
        return _run(args)
    finally:
        log.removeHandler(handler)
        log.setLevel(logging.NOTSET)


def _run(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    try:
        if args.example is not None:
            W, source = builtin_example(args.example), f"example:{args.example}"
        else:
            W, source = read_spec(args.input), args.input
        log.info("loaded %s: %d lagrangian(s), %d floer pair(s)",
                 source, len(W.lagrangians), len(W.floer_pairs))
        report = run_report(W, args.command, source)
    except (ParseError, UnknownExample, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PearlBlowupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for item in getattr(exc, "items", ())[1:]:
            print(f"  {item}", file=sys.stderr)
        return 1
    log.info("%s finished in %.3f s", args.command, time.perf_counter() - t0)
    sys.stdout.write(report.to_json() if args.json else report.render_text())
    return 1 if report.refused else 0


if __name__ == "__main__":
    sys.exit(main())
