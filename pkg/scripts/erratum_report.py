"""Print every mismatch between the printed example tables and their recomputation."""

import argparse
import json
import sys
from dataclasses import dataclass

from bihom.catalog import ERRATA, erratum_ledger


@dataclass(frozen=True)
class ErratumConfig:
    sources: tuple = tuple(sorted(ERRATA))
    as_json: bool = False


def report(cfg: ErratumConfig) -> str:
    entries = erratum_ledger(list(cfg.sources))
    if cfg.as_json:
        return json.dumps([e.to_dict() for e in entries], sort_keys=True, indent=2) + "\n"
    return "".join(f"{e}\n" for e in entries)


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("sources", nargs="*", help=f"any of {', '.join(sorted(ERRATA))}; default all")
    p.add_argument("--json", action="store_true")
    a = p.parse_args()
    unknown = set(a.sources) - set(ERRATA)
    if unknown:
        p.error(f"unknown sources: {', '.join(sorted(unknown))}")
    cfg = ErratumConfig(tuple(a.sources) or ErratumConfig.sources, a.json)
    sys.stdout.write(report(cfg))
    return 0


if __name__ == "__main__":
    sys.exit(main())
