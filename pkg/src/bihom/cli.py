"""Command-line entry point: check documents, list the catalog, replicate the results."""

from __future__ import annotations

import argparse
import sys
from importlib import resources

from . import catalog
from .dsl import parse, run
from .errors import BihomError
from .report import CheckMode

REPLICATE_DOC = "replicate.bihom"


def replicate_source() -> str:
    return resources.files("bihom").joinpath("data", REPLICATE_DOC).read_text()


def _emit(report, fmt, timing, out):
    out.write(report.structured(timing) if fmt == "structured" else report.text(timing))


def _run_source(source, args, out):
    mode = CheckMode(args.mode, args.points, args.seed)
    try:
        report = run(parse(source), mode)
    except BihomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(report, args.format, not args.no_timing, out)
    return report.exit_status


def _add_run_options(p):
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--mode", choices=("linearized", "symbolic", "sampled"), default="linearized",
                   help="default strategy for checks without mode=")
    p.add_argument("--points", type=int, default=50, help="sample count for sampled mode")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled mode")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed times from the report")


def build_parser():
    parser = argparse.ArgumentParser(prog="bihom", description="Exact checks for BiHom-algebras and bimodules.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", help="run a .bihom document")
    p.add_argument("file")
    _add_run_options(p)
    c = sub.add_parser("catalog", help="built-in instances")
    c.add_argument("action", choices=("list",))
    r = sub.add_parser("replicate-paper", help="run the built-in replication document")
    _add_run_options(r)
    r.add_argument("--print-document", action="store_true", help="print the document instead of running it")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "catalog":
        for name, desc in catalog.list_catalog():
            out.write(f"{name:12s} {desc}\n")
        return 0
    if args.command == "replicate-paper":
        if args.print_document:
            out.write(replicate_source())
            return 0
        return _run_source(replicate_source(), args, out)
    try:
        with open(args.file, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return _run_source(source, args, out)


if __name__ == "__main__":
    sys.exit(main())
