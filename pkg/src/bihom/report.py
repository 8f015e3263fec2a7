"""CheckReport, CheckMode and the exhaustive tuple-scan driver."""

from __future__ import annotations

import multiprocessing
import os
import time
from dataclasses import dataclass, field

from .linalg import vec_is_zero
from .scalar import format_num

WORKERS_ENV = "BIHOM_WORKERS"
_PARALLEL_MIN = 4096


@dataclass(frozen=True)
class CheckMode:
    strategy: str = "linearized"  # linearized | symbolic | sampled
    points: int = 50
    seed: int = 0

    def __post_init__(self):
        if self.strategy not in ("linearized", "symbolic", "sampled"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.strategy == "sampled" and self.points < 1:
            raise ValueError("sampled mode needs at least one point")

    @classmethod
    def linearized(cls):
        return cls("linearized")

    @classmethod
    def symbolic(cls):
        return cls("symbolic")

    @classmethod
    def sampled(cls, points=50, seed=0):
        return cls("sampled", points, seed)

    def describe(self):
        if self.strategy == "sampled":
            return f"sampled(points={self.points}, seed={self.seed})"
        return self.strategy


LINEARIZED = CheckMode()


@dataclass
class Witness:
    where: object  # tuple of basis indices (1-based) or a text description
    residual: list
    equation: str = ""

    def to_dict(self):
        where = list(self.where) if isinstance(self.where, tuple) else self.where
        return {"equation": self.equation, "where": where, "residual": list(self.residual)}


@dataclass
class CheckReport:
    check_name: str
    verdict: str
    witnesses: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in ("pass", "fail"):
            raise ValueError(self.verdict)
        if (self.verdict == "fail") != bool(self.witnesses):
            raise ValueError("fail verdicts need witnesses and passes must have none")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def __bool__(self):
        return self.passed

    def to_dict(self, timing=True):
        stats = dict(self.stats)
        if not timing:
            stats.pop("elapsed_s", None)
        return {
            "check": self.check_name,
            "verdict": self.verdict,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "stats": stats,
            "notes": dict(self.notes),
        }

    def summary(self) -> str:
        head = f"{self.check_name}: {self.verdict.upper()} ({self.stats.get('tuples', 0)} tuples)"
        lines = [head]
        for w in self.witnesses:
            eq = f"[{w.equation}] " if w.equation else ""
            lines.append(f"  witness {eq}{w.where}: residual ({', '.join(w.residual)})")
        for k in sorted(self.notes):
            lines.append(f"  {k}: {self.notes[k]}")
        return "\n".join(lines)


def render_vec(v):
    return [format_num(x) for x in v]


def workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


_ACTIVE = None


def _scan_chunk(bounds):
    lo, hi = bounds
    space, residual = _ACTIVE
    for idx in range(lo, hi):
        r = residual(space[idx])
        if r is not None and not vec_is_zero(r):
            return idx, r
    return None


def first_failure(space, residual):
    """Index and residual of the first tuple (in the given order) with a nonzero residual."""
    global _ACTIVE
    space = list(space)
    n = len(space)
    w = workers()
    if w > 1 and n >= _PARALLEL_MIN and "fork" in multiprocessing.get_all_start_methods():
        _ACTIVE = (space, residual)
        step = -(-n // w)
        chunks = [(i, min(n, i + step)) for i in range(0, n, step)]
        try:
            with multiprocessing.get_context("fork").Pool(w) as pool:
                results = pool.map(_scan_chunk, chunks)
        finally:
            _ACTIVE = None
        for res in results:
            if res is not None:
                return res[0], space[res[0]], res[1], n
        return None, None, None, n
    for idx, t in enumerate(space):
        r = residual(t)
        if r is not None and not vec_is_zero(r):
            return idx, t, r, n
    return None, None, None, n


class Scan:
    """Accumulates one check made of several equations, each scanned over basis tuples."""

    def __init__(self, name, **notes):
        self.name = name
        self.notes = dict(notes)
        self.witnesses = []
        self.tuples = 0
        self.start = time.perf_counter()

    def equation(self, label, space, residual):
        idx, t, r, n = first_failure(space, residual)
        if idx is None:
            self.tuples += n
            return True
        self.tuples += idx + 1
        self.witnesses.append(Witness(tuple(i + 1 for i in t), render_vec(r), label))
        return False

    def record(self, label, where, residual_vec):
        """Record a directly computed residual (generic or sampled point)."""
        self.tuples += 1
        if residual_vec is not None and not vec_is_zero(residual_vec):
            self.witnesses.append(Witness(where, render_vec(residual_vec), label))
            return False
        return True

    def fail(self, label, where, residual_text):
        self.witnesses.append(Witness(where, list(residual_text), label))

    def report(self):
        return CheckReport(
            self.name,
            "fail" if self.witnesses else "pass",
            self.witnesses,
            {"tuples": self.tuples, "elapsed_s": round(time.perf_counter() - self.start, 6)},
            self.notes,
        )
