"""Time the main checkers on catalog instances, optionally with a worker pool."""

import argparse
import os
import statistics
import sys
import time
from dataclasses import dataclass

from bihom.bimodule import check_alt_bimodule, check_jordan_bimodule
from bihom.bimodule_constructions import regular_bimodule, special_pair_to_jordan_bimodule, split_null_extension
from bihom.catalog import example_e1_first, lookup
from bihom.constructions import plus_algebra, tensor_product
from bihom.identities import check_bihom_jordan, check_left_alternative
from bihom.report import WORKERS_ENV


@dataclass(frozen=True)
class BenchConfig:
    repeats: int = 3
    workers: int = 1
    include_large: bool = False


def cases(cfg: BenchConfig):
    O, M = lookup("octonions"), lookup("matrix2x2")
    P = plus_algebra(M)
    yield "left-alternative e1.first (symbolic)", lambda: check_left_alternative(example_e1_first())
    yield "left-alternative octonions", lambda: check_left_alternative(O)
    yield "alt-bimodule regular(octonions)", lambda: check_alt_bimodule(regular_bimodule(O))
    yield "left-alternative split extension (16)", lambda: check_left_alternative(
        split_null_extension(O, regular_bimodule(O), "alternative"))
    yield "jordan plus(matrix2x2)", lambda: check_bihom_jordan(P)
    yield "jordan-bimodule special pair", lambda: check_jordan_bimodule(
        special_pair_to_jordan_bimodule(regular_bimodule(M).with_host(P)))
    if cfg.include_large:
        yield "left-alternative matrix2x2 x octonions (32)", lambda: check_left_alternative(
            tensor_product(M, O, check=False))


def bench(cfg: BenchConfig):
    os.environ[WORKERS_ENV] = str(cfg.workers)
    for name, fn in cases(cfg):
        times = []
        for _ in range(cfg.repeats):
            start = time.perf_counter()
            verdict = fn().verdict
            times.append(time.perf_counter() - start)
        print(f"{name:45s} {verdict:4s} median {statistics.median(times):7.3f} s")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--repeats", type=int, default=BenchConfig.repeats)
    p.add_argument("--workers", type=int, default=BenchConfig.workers)
    p.add_argument("--large", action="store_true", help="include the 32-dim tensor product")
    a = p.parse_args()
    bench(BenchConfig(a.repeats, a.workers, a.large))
    return 0


if __name__ == "__main__":
    sys.exit(main())
