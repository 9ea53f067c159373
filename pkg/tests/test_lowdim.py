import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tukeydepth import (
    DimensionMismatch,
    GeneratorSpec,
    OriginPointPresent,
    generate,
    nhd1,
    nhd2,
    oracle_nhd,
)


def drop_origin_points(pts):
    return pts[np.abs(pts).max(axis=1) > 1e-9]


class TestNhd1:
    def test_all_positive(self):
        assert nhd1([1.0, 2.0, 3.0]) == 0

    def test_split(self):
        assert nhd1([-1.0, 2.0]) == 1

    def test_zero_joins_both_halflines(self):
        # both closed halflines hold two of the three values
        assert nhd1([-1.0, 0.0, 1.0]) == 2

    def test_empty(self):
        assert nhd1([]) == 0

    def test_matches_direct_enumeration(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            v = np.round(rng.normal(size=rng.integers(1, 25)), 1)
            nonneg = int(np.count_nonzero(v >= 0.0))
            nonpos = int(np.count_nonzero(v <= 0.0))
            assert nhd1(v) == min(nonneg, nonpos)

    @given(st.lists(st.floats(-1e6, 1e6, allow_nan=False), max_size=40))
    @settings(max_examples=60, deadline=None, derandomize=True)
    def test_negation_symmetric(self, values):
        v = np.asarray(values)
        assert nhd1(v) == nhd1(-v)


class TestNhd2KnownValues:
    def test_symmetric_cross(self):
        assert nhd2([(1, 0), (-1, 0), (0, 1), (0, -1)]) == 2

    def test_open_halfplane_cloud(self):
        assert nhd2([(1, 1), (2, 1), (1, 2)]) == 0

    def test_three_thirds_of_circle(self):
        angles = np.deg2rad([0.0, 120.0, 240.0])
        pts = np.column_stack([np.cos(angles), np.sin(angles)])
        assert nhd2(pts) == 1

    def test_single_point(self):
        assert nhd2([(0.3, -0.4)]) == 0

    def test_empty(self):
        assert nhd2(np.empty((0, 2))) == 0

    def test_wrong_dimension_rejected(self):
        with pytest.raises(DimensionMismatch):
            nhd2([(1.0, 2.0, 3.0)])

    def test_origin_point_rejected(self):
        with pytest.raises(OriginPointPresent):
            nhd2([(1.0, 0.0), (0.0, 0.0)])


class TestNhd2Ties:
    def test_duplicated_points(self):
        pts = np.array([[1.0, 0.0]] * 3 + [[-1.0, 0.0]] * 2 + [[0.0, 1.0]])
        assert nhd2(pts) == oracle_nhd(pts)

    def test_exact_antipodal_pairs(self):
        base = np.array([[1.0, 2.0], [-3.0, 0.5], [0.25, -1.5]])
        pts = np.vstack([base, -base])
        assert nhd2(pts) == oracle_nhd(pts)

    def test_collinear_through_origin(self):
        v = np.array([2.0, -1.0])
        pts = np.outer([1.0, 2.0, -1.0, -0.5, 3.0], v)
        # depth equals the univariate split along the line
        assert nhd2(pts) == 2
        assert nhd2(pts) == oracle_nhd(pts)

    def test_positive_scaling_of_single_points(self):
        rng = np.random.default_rng(11)
        pts = rng.normal(size=(25, 2))
        scaled = pts * rng.uniform(0.25, 8.0, size=(25, 1))
        assert nhd2(pts) == nhd2(scaled)


class TestNhd2AgainstOracle:
    @pytest.mark.parametrize("dist", ["normal", "grid"])
    def test_random_instances(self, dist):
        for seed in range(120):
            n = 3 + (seed * 5) % 38
            pts = drop_origin_points(generate(GeneratorSpec(dist, 2, n, seed)))
            if len(pts) == 0:
                continue
            assert nhd2(pts) == oracle_nhd(pts), f"seed={seed}"

    def test_larger_instances(self):
        for seed in (7, 77, 777):
            pts = drop_origin_points(generate(GeneratorSpec("normal", 2, 200, seed)))
            assert nhd2(pts) == oracle_nhd(pts)

    @given(st.integers(0, 2**32))
    @settings(max_examples=40, deadline=None, derandomize=True)
    def test_rotation_invariance(self, seed):
        rng = np.random.default_rng(seed)
        pts = rng.normal(size=(rng.integers(1, 40), 2))
        angle = rng.uniform(0.0, 2.0 * np.pi)
        c, s = np.cos(angle), np.sin(angle)
        rotated = pts @ np.array([[c, -s], [s, c]]).T
        assert nhd2(pts) == nhd2(rotated)

    @given(st.integers(0, 2**32))
    @settings(max_examples=40, deadline=None, derandomize=True)
    def test_negation_and_half_bound(self, seed):
        rng = np.random.default_rng(seed)
        pts = rng.normal(size=(rng.integers(1, 50), 2))
        value = nhd2(pts)
        assert value == nhd2(-pts)
        assert 0 <= value <= len(pts) // 2
