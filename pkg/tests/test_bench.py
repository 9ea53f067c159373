import io

import pytest

from tukeydepth import BenchPlan, run_bench, write_csv
from tukeydepth.bench import CSV_HEADER, format_record


def tiny_plan(**overrides):
    base = dict(dims=(3,), n0=8, distributions=("grid",),
                variants=("rec", "comb2", "comb"), reps=2,
                time_limit_per_cell=0.5, max_n=16)
    base.update(overrides)
    return BenchPlan(**base)


class TestPlanValidation:
    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            BenchPlan(reps=0)
        with pytest.raises(ValueError):
            BenchPlan(aggregate="mode")
        with pytest.raises(ValueError):
            BenchPlan(distributions=("cauchy",))
        with pytest.raises(ValueError):
            BenchPlan(variants=("quantum",))
        with pytest.raises(ValueError):
            BenchPlan(dims=(5,), n0=4)


class TestRunBench:
    def test_rows_for_each_variant_and_cell(self):
        records = run_bench(tiny_plan(), seed=3)
        cells = {(r.variant, r.n) for r in records}
        for variant in ("rec", "comb2", "comb"):
            assert (variant, 8) in cells and (variant, 16) in cells

    def test_depths_agree_across_variants_per_cell(self):
        records = run_bench(tiny_plan(), seed=11)
        by_cell = {}
        for r in records:
            by_cell.setdefault((r.distribution, r.d, r.n), []).append(r)
        for group in by_cell.values():
            depth_tuples = {r.depth_values for r in group}
            assert len(depth_tuples) == 1

    def test_empty_plan_is_empty(self):
        assert run_bench(tiny_plan(dims=()), seed=1) == []
        assert run_bench(tiny_plan(variants=()), seed=1) == []

    def test_depths_are_deterministic_for_fixed_seed(self):
        a = run_bench(tiny_plan(), seed=7)
        b = run_bench(tiny_plan(), seed=7)
        assert [(r.distribution, r.d, r.n, r.variant, r.depth_values)
                for r in a] == \
               [(r.distribution, r.d, r.n, r.variant, r.depth_values)
                for r in b]

    def test_budget_stops_expensive_variant_first(self):
        # a tight budget halts the cubic variant at a smaller n than rec
        plan = BenchPlan(dims=(3,), n0=40, distributions=("normal",),
                         variants=("rec", "comb"), reps=2,
                         time_limit_per_cell=0.08, max_n=5120)
        records = run_bench(plan, seed=5)
        max_n = {}
        for r in records:
            max_n[r.variant] = max(max_n.get(r.variant, 0), r.n)
        assert max_n["comb"] < max_n["rec"]

    def test_on_record_streams_results(self):
        seen = []
        run_bench(tiny_plan(max_n=8), seed=2, on_record=seen.append)
        assert len(seen) == 3


class TestCsv:
    def test_header_and_significant_digits(self):
        records = run_bench(tiny_plan(max_n=8), seed=4)
        buffer = io.StringIO()
        write_csv(records, buffer)
        lines = buffer.getvalue().strip().split("\n")
        assert lines[0] == CSV_HEADER
        assert len(lines) == 4
        for line in lines[1:]:
            fields = line.split(",")
            assert len(fields) == 10
            seconds = fields[6]
            mantissa = seconds.replace(".", "").replace("-", "")
            mantissa = mantissa.split("e")[0].lstrip("0")
            assert len(mantissa) <= 3

    def test_fixed_seed_rows_identical_except_seconds(self):
        def strip_seconds(record):
            fields = format_record(record).split(",")
            return fields[:6] + fields[7:]

        a = run_bench(tiny_plan(), seed=9)
        b = run_bench(tiny_plan(), seed=9)
        assert [strip_seconds(r) for r in a] == [strip_seconds(r) for r in b]
