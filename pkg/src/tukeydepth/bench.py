"""Benchmark harness: timing grids over (distribution, d, n, variant).

For each distribution and dimension the harness walks a geometric schedule
n = n0 * 2^i.  Within a cell every repetition r draws its cloud from seed
+ r, so all variants of the same cell see identical data and must report
identical depths.  A warm-up repetition is run first and discarded; timing
uses a monotonic clock and covers the full depth call (preprocessing
included) but never the data generation.  Once a variant's aggregate time
for a cell exceeds the per-cell limit, that variant stops walking the
schedule; larger cells for it are simply absent from the output, which is
how budget-exhausted cells are encoded in the CSV as well.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TextIO

import numpy as np

from .algorithms import COMB, COMB2, REC, AlgorithmOptions, halfspace_depth
from .datagen import GRID, NORMAL, GeneratorSpec, generate

CSV_HEADER = "distribution,d,n,variant,reps,aggregate_kind,seconds,depth_min,depth_max,workers"

MEAN = "mean"
MEDIAN = "median"


@dataclass(frozen=True)
class BenchPlan:
    """One timing grid.

    ``n0`` starts the geometric schedule and must admit every requested
    dimension (n0 >= d + 1).  ``max_n`` optionally caps the schedule so
    fixed ladders can be timed regardless of the cell budget.
    """

    dims: Sequence[int] = (3,)
    n0: int = 40
    distributions: Sequence[str] = (NORMAL,)
    variants: Sequence[str] = (REC, COMB2, COMB)
    reps: int = 10
    time_limit_per_cell: float = 60.0
    aggregate: str = MEAN
    max_n: int | None = None
    workers: int | None = None

    def __post_init__(self) -> None:
        if self.reps < 1:
            raise ValueError("reps must be at least 1")
        if self.aggregate not in (MEAN, MEDIAN):
            raise ValueError(f"unknown aggregate: {self.aggregate!r}")
        for dist in self.distributions:
            if dist not in (NORMAL, GRID):
                raise ValueError(f"unknown distribution: {dist!r}")
        for v in self.variants:
            if v not in (REC, COMB2, COMB):
                raise ValueError(f"unknown variant: {v!r}")
        for d in self.dims:
            if self.n0 < d + 1:
                raise ValueError(f"n0={self.n0} is too small for d={d}")


@dataclass
class BenchRecord:
    """One measured cell."""

    distribution: str
    d: int
    n: int
    variant: str
    reps_completed: int
    seconds_aggregate: float
    aggregate_kind: str
    depth_values: tuple[int, ...]
    workers: int


def run_bench(
    plan: BenchPlan,
    seed: int,
    on_record: Callable[[BenchRecord], None] | None = None,
) -> list[BenchRecord]:
    """Execute the plan and return one record per completed cell.

    Records are emitted in walk order; ``on_record`` receives each one as
    soon as it is measured so partial results survive interruption.
    """
    records: list[BenchRecord] = []
    workers = plan.workers if plan.workers else 1
    for dist in plan.distributions:
        for d in plan.dims:
            active = [v for v in plan.variants]
            n = plan.n0
            while active and (plan.max_n is None or n <= plan.max_n):
                clouds = [
                    generate(GeneratorSpec(dist, d, n, seed + r))
                    for r in range(plan.reps)
                ]
                z = np.zeros(d)
                still_active: list[str] = []
                for variant in active:
                    opts = AlgorithmOptions(variant=variant,
                                            workers=plan.workers)
                    halfspace_depth(clouds[0], z, opts)  # warm-up, discarded
                    times: list[float] = []
                    depths: list[int] = []
                    for cloud in clouds:
                        t0 = time.perf_counter()
                        result = halfspace_depth(cloud, z, opts)
                        times.append(time.perf_counter() - t0)
                        depths.append(result.nhd)
                    if plan.aggregate == MEAN:
                        agg = sum(times) / len(times)
                    else:
                        agg = statistics.median(times)
                    record = BenchRecord(
                        distribution=dist, d=d, n=n, variant=variant,
                        reps_completed=len(times), seconds_aggregate=agg,
                        aggregate_kind=plan.aggregate,
                        depth_values=tuple(depths), workers=workers,
                    )
                    records.append(record)
                    if on_record is not None:
                        on_record(record)
                    if agg <= plan.time_limit_per_cell:
                        still_active.append(variant)
                active = still_active
                n *= 2
    return records


def format_record(record: BenchRecord) -> str:
    """One CSV row; seconds carry three significant digits."""
    return (
        f"{record.distribution},{record.d},{record.n},{record.variant},"
        f"{record.reps_completed},{record.aggregate_kind},"
        f"{record.seconds_aggregate:.3g},"
        f"{min(record.depth_values)},{max(record.depth_values)},"
        f"{record.workers}"
    )


def write_csv(records: Iterable[BenchRecord], out: TextIO) -> None:
    out.write(CSV_HEADER + "\n")
    for record in records:
        out.write(format_record(record) + "\n")
