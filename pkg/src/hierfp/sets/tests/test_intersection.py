"""Tests for the simplex kernel and Dykstra intersections."""

from itertools import combinations

import numpy as np
import pytest
from pydantic import ValidationError

from hierfp.core.interfaces import ProjectionNotConvergedError
from hierfp.sets import (
    Ball,
    Box,
    Halfspace,
    Hyperplane,
    Intersection,
    Simplex,
    dykstra,
    parse_set,
    project_simplex,
)


def _face_search_projection(y: np.ndarray) -> np.ndarray:
    """Nearest of the affine projections onto every face that lands in the face."""
    best, best_dist = None, np.inf
    for size in range(1, len(y) + 1):
        for support in combinations(range(len(y)), size):
            idx = list(support)
            z = np.zeros_like(y)
            z[idx] = y[idx] - (y[idx].sum() - 1.0) / size
            if np.all(z[idx] >= 0) and np.linalg.norm(z - y) < best_dist:
                best, best_dist = z, np.linalg.norm(z - y)
    return best


class TestSimplex:
    def test_projection_examples(self):
        np.testing.assert_allclose(project_simplex(np.array([0.5, 0.5])), [0.5, 0.5])
        np.testing.assert_allclose(project_simplex(np.array([2.0, 0.0])), [1.0, 0.0])
        np.testing.assert_allclose(
            project_simplex(np.array([0.0, 0.0, 0.0])), [1 / 3, 1 / 3, 1 / 3]
        )

    def test_projection_lands_on_simplex(self):
        rng = np.random.default_rng(3)
        simplex = Simplex(dimension=4)
        for x in rng.normal(scale=3.0, size=(100, 4)):
            assert simplex.contains(simplex.project(x), 1e-12)

    @pytest.mark.parametrize("dim", [1, 2, 3, 4])
    def test_matches_exhaustive_face_search(self, dim):
        rng = np.random.default_rng(dim)
        for y in rng.normal(scale=2.0, size=(300, dim)):
            np.testing.assert_allclose(
                project_simplex(y), _face_search_projection(y), atol=1e-12
            )

    def test_diameter(self):
        assert Simplex(dimension=3).diameter() == pytest.approx(np.sqrt(2.0))


class TestDykstra:
    def test_two_halfspaces_gives_metric_projection(self):
        # {x1 <= 0} ∩ {x2 <= 0}; the corner is the projection of (1, 1).
        sets = [Halfspace(a=(1.0, 0.0), b=0.0), Halfspace(a=(0.0, 1.0), b=0.0)]
        result, sweeps = dykstra(sets, np.array([1.0, 1.0]))
        np.testing.assert_allclose(result, [0.0, 0.0], atol=1e-9)
        assert sweeps >= 1

    def test_projection_not_just_feasible(self):
        sets = [Ball(center=(0.0, 0.0), radius=1.0), Halfspace(a=(0.0, 1.0), b=0.0)]
        result, _ = dykstra(sets, np.array([2.0, 2.0]))
        np.testing.assert_allclose(result, [1.0, 0.0], atol=1e-6)

    def test_sweep_cap_raises(self):
        sets = [Hyperplane(a=(1.0, 0.0), b=0.0), Hyperplane(a=(1.0, 0.0), b=1.0)]
        with pytest.raises(ProjectionNotConvergedError) as exc_info:
            dykstra(sets, np.array([3.0, 0.0]), max_sweeps=50)
        assert exc_info.value.sweeps == 50


class TestIntersection:
    def test_box_with_line(self):
        inter = Intersection(
            members=[Box.cube(1.0, 2), Hyperplane(a=(1.0, -1.0), b=0.0)]
        )
        p = inter.project(np.array([3.0, 1.0]))
        np.testing.assert_allclose(p, [1.0, 1.0], atol=1e-8)
        assert inter.contains(p, 1e-8)
        assert inter.is_bounded

    def test_single_member_delegates(self):
        inter = Intersection(members=[Box.cube(1.0, 2)])
        np.testing.assert_array_equal(inter.project(np.array([2.0, 0.0])), [1.0, 0.0])

    def test_mixed_dimensions_rejected(self):
        with pytest.raises(ValidationError, match="one dimension"):
            Intersection(members=[Box.cube(1.0, 2), Box.cube(1.0, 3)])

    def test_bounding_box_is_tightest_member_overlap(self):
        inter = Intersection(
            members=[Box(lo=(0.0, 0.0), hi=(2.0, 2.0)), Box(lo=(1.0, -1.0), hi=(3.0, 1.0))]
        )
        box = inter.bounding_box()
        assert box.lo == (1.0, 0.0)
        assert box.hi == (2.0, 1.0)

    def test_overrides_reach_dykstra(self):
        inter = Intersection(
            members=[Hyperplane(a=(1.0, 0.0), b=0.0), Hyperplane(a=(1.0, 0.0), b=1.0)],
            max_sweeps=5,
        )
        with pytest.raises(ProjectionNotConvergedError):
            inter.project(np.array([3.0, 0.0]))

    def test_nested_config(self):
        inter = parse_set(
            {
                "kind": "intersection",
                "members": [
                    {"kind": "box", "lo": [-1, -1], "hi": [1, 1]},
                    {"kind": "halfspace", "a": [1, 1], "b": 0},
                ],
            }
        )
        assert isinstance(inter, Intersection)
        assert inter.contains(inter.project(np.array([1.0, 1.0])), 1e-8)
