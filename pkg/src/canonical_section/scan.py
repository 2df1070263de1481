"""Exhaustive verification over every composition up to a given size."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import Composition, compositions
from .verify import verify_composition


@dataclass(frozen=True)
class ScanFailure:
    composition: tuple[int, ...]
    check: str
    expected: object
    got: object
    seed: int

    @property
    def repro(self) -> str:
        c = ",".join(map(str, self.composition))
        return f"canonical-section verify {c} --seed {self.seed} --checks {self.check}"

    def to_json(self) -> dict:
        return {
            "composition": list(self.composition),
            "check": self.check,
            "expected": self.expected,
            "got": self.got,
            "seed": self.seed,
            "repro": self.repro,
        }


@dataclass
class ScanSummary:
    max_n: int
    seed: int
    counts: dict[int, int] = field(default_factory=dict)
    failures: list[ScanFailure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "max_n": self.max_n,
            "seed": self.seed,
            "compositions": self.total,
            "per_n": {str(n): m for n, m in sorted(self.counts.items())},
            "failures": [f.to_json() for f in self.failures],
            "pass": self.passed,
            "elapsed_s": round(self.elapsed, 2),
        }

    def text(self) -> str:
        lines = [f"scanned {self.total} compositions with n <= {self.max_n} (seed {self.seed}) in {self.elapsed:.1f}s"]
        for f in self.failures:
            lines.append(f"FAIL {f.check} {f.composition}: expected {f.expected} got {f.got}\n  {f.repro}")
        lines.append("all checks pass" if self.passed else f"{len(self.failures)} failures")
        return "\n".join(lines) + "\n"


def _one(args) -> list[tuple]:
    parts, seed, checks = args
    rep = verify_composition(Composition(parts), seed=seed, checks=checks)
    return [(parts, ch.to_json()) for ch in rep.failures]


def scan(
    max_n: int,
    checks: Optional[Sequence[str]] = None,
    parallelism: int = 1,
    seed: int = 0,
    min_n: int = 1,
) -> ScanSummary:
    """Verify every composition of every n in [min_n, max_n]."""
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    if parallelism < 1:
        raise ValueError("parallelism must be positive")
    checks = tuple(checks) if checks is not None else None
    summary = ScanSummary(max_n, seed)
    jobs = []
    for n in range(max(1, min_n), max_n + 1):
        cs = list(compositions(n))
        summary.counts[n] = len(cs)
        jobs.extend((c.parts, seed, checks) for c in cs)
    t0 = time.perf_counter()
    if parallelism == 1:
        collected = [_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            collected = list(pool.map(_one, jobs, chunksize=8))
    for found in collected:
        for parts, ch in found:
            summary.failures.append(ScanFailure(parts, ch["name"], ch["expected"], ch["got"], seed))
    summary.elapsed = time.perf_counter() - t0
    return summary
