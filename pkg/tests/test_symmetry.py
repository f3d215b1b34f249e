import math
import random

import pytest
from corpus import (
    hand_symmetry_corpus,
    oracle_mirror_axis_angles,
    oracle_rotational_order,
    rand_c_dot,
    rand_points,
    regular_polygon,
)

from swarmperm import (
    DuplicatePoints,
    Frame,
    Point,
    center_robot_index,
    classify,
    mirror_axes,
    robots_on_axis,
    rotational_order,
    symmetricity_rho,
    symmetry_report,
    to_local_snapshot,
    view_classes,
)

SQUARE = [Point(1, 0), Point(0, 1), Point(-1, 0), Point(0, -1)]
SQUARE_CENTER = [Point(0, 0)] + SQUARE


def _axis_angles(axes):
    return sorted(ax.angle for ax in axes)


def _angles_match(a, b, period=math.pi, tol=1e-7):
    if len(a) != len(b):
        return False
    return all(min(abs(x - y), period - abs(x - y)) <= tol for x, y in zip(a, b))


def test_square_symmetries():
    assert rotational_order(SQUARE) == 4
    assert len(mirror_axes(SQUARE)) == 4
    assert symmetricity_rho(SQUARE) == 4


def test_rho_one_when_centroid_occupied():
    assert symmetricity_rho(SQUARE_CENTER) == 1
    assert rotational_order(SQUARE_CENTER) == 4


def test_center_robot_index():
    assert center_robot_index(SQUARE_CENTER) == 0
    assert center_robot_index(SQUARE) is None


def test_classify_square_center_is_centered_class():
    cls = classify(SQUARE_CENTER)
    assert cls.in_c_dot and cls.k_without_center == 4


def test_classify_scalene_not_centered():
    cls = classify([Point(0, 0), Point(2, 0.1), Point(0.4, 1.3)])
    assert not cls.in_c_dot


def test_classify_single_robot_axis():
    degs = (0, 10, -10, 60, -60, 120, -120)
    pts = [Point(2 * math.cos(math.radians(d)), 2 * math.sin(math.radians(d)))
           for d in degs]
    cls = classify(pts)
    assert cls.axis_with_single_robot and cls.axis_count == 1


def test_robots_on_axis():
    pts = [Point(2, 0), Point(-1, 1), Point(-1, -1)]
    axes = mirror_axes(pts)
    assert len(axes) == 1
    assert len(robots_on_axis(pts, axes[0])) == 1


def test_duplicate_points_rejected():
    with pytest.raises(DuplicatePoints):
        symmetricity_rho([Point(0, 0), Point(0, 0), Point(1, 0)])


def test_rotational_order_matches_oracle_random():
    rng = random.Random(21)
    for _ in range(120):
        pts = rand_points(rng, rng.randint(2, 12))
        assert rotational_order(pts) == oracle_rotational_order(pts)


def test_mirror_axes_match_oracle_random():
    rng = random.Random(22)
    for _ in range(120):
        pts = rand_points(rng, rng.randint(2, 12))
        got = _axis_angles(mirror_axes(pts))
        want = oracle_mirror_axis_angles(pts)
        assert _angles_match(got, want)


def test_symmetry_hand_corpus():
    for pts, order, n_axes in hand_symmetry_corpus():
        assert rotational_order(pts) == order, pts
        assert len(mirror_axes(pts)) == n_axes, pts
        assert rotational_order(pts) == oracle_rotational_order(pts)
        assert len(oracle_mirror_axis_angles(pts)) == n_axes


def test_symmetry_report_fields():
    rep = symmetry_report([Point(1, 0), Point(-1, 0), Point(0, 2), Point(0, -2)])
    assert rep.rotational_order == 2
    assert rep.is_central_symmetric
    assert not rep.has_central_robot
    assert len(rep.mirror_axes) == 2
    assert rep.robot_counts_on_axes == (2, 2)


def test_c_dot_generator_agrees_with_classify():
    rng = random.Random(23)
    for _ in range(25):
        n = rng.randint(3, 12)
        pts = rand_c_dot(rng, n)
        cls = classify(pts)
        assert cls.in_c_dot
        ci = center_robot_index(pts)
        assert ci is not None
        rest = [p for i, p in enumerate(pts) if i != ci]
        assert symmetricity_rho(rest) == cls.k_without_center > 1


def test_view_classes_symmetric_frames():
    # four corners with outward-rotated frames share one view class,
    # the distinct center forms its own
    pts = SQUARE_CENTER
    frames = [Frame(0.0)] + [Frame(math.atan2(p.y, p.x)) for p in pts[1:]]
    classes = view_classes(pts, frames)
    sizes = sorted(len(c) for c in classes)
    assert sizes == [1, 4]


def test_view_classes_distinct_frames():
    pts = [Point(0, 0), Point(2, 0.3), Point(-1, 1.4)]
    frames = [Frame(0.1), Frame(1.1), Frame(2.3)]
    classes = view_classes(pts, frames)
    assert sorted(len(c) for c in classes) == [1, 1, 1]
