"""Symmetry analysis of point configurations: rotational order about the
centroid, mirror axes, symmetricity, view classes, and the feasibility
classification used by the protocols.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DuplicatePoints
from .geometry import (
    DEFAULT_TOL,
    Point,
    Tolerance,
    angle_of,
    ccw_angle,
    centroid,
    concentric_decomposition,
    inverse_transform,
    norm_angle,
    smallest_enclosing_circle,
)


@dataclass(frozen=True)
class Axis:
    """Mirror axis: a line through `point` along unit `direction`.

    The direction is canonicalized to angle in [0, pi).
    """

    point: Point
    direction: Point

    @property
    def angle(self) -> float:
        a = angle_of(self.direction)
        if a < 0.0:
            a += math.pi
        if a >= math.pi:
            a -= math.pi
        return a


@dataclass(frozen=True)
class SymmetryReport:
    rho: int
    rotational_order: int
    mirror_axes: tuple[Axis, ...]
    robot_counts_on_axes: tuple[int, ...]
    has_central_robot: bool
    is_central_symmetric: bool


@dataclass(frozen=True)
class ConfigClass:
    in_c_dot: bool
    k_without_center: int
    axis_with_single_robot: bool
    unique_axis_no_robots: bool
    axis_count: int


def _reflect(v: Point, axis_angle: float) -> Point:
    return v.rotated(-axis_angle).mirrored().rotated(axis_angle)


def _matches_multiset(points: Sequence[Point], images: Sequence[Point], tol: Tolerance) -> bool:
    """True when `images` is a permutation of `points` within eps."""
    used = [False] * len(points)
    for q in images:
        best, best_d = -1, math.inf
        for j, p in enumerate(points):
            if used[j]:
                continue
            d = p.dist(q)
            if d < best_d:
                best, best_d = j, d
        if best < 0 or best_d > tol.eps:
            return False
        used[best] = True
    return True


def _reference_layer(points: Sequence[Point], c: Point, tol: Tolerance) -> tuple[int, ...]:
    """Smallest non-degenerate radius layer (ties to the innermost one).

    Candidate symmetries must permute this layer, so testing only the
    angles that map its first point into the layer is exhaustive.
    """
    deco = concentric_decomposition(points, c, tol)
    best: tuple[int, ...] | None = None
    for layer in deco.layers:
        if layer.radius <= tol.eps:
            continue
        if best is None or len(layer.indices) < len(best):
            best = layer.indices
    return best if best is not None else ()


def rotational_order(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> int:
    """Largest k such that rotation by 2*pi/k about the centroid maps the
    point set onto itself."""
    if len(points) <= 1:
        return 1
    c = centroid(points)
    layer = _reference_layer(points, c, tol)
    if not layer:
        return 1
    base = points[layer[0]] - c
    count = 0
    for i in layer:
        alpha = ccw_angle(base, points[i] - c)
        images = [c + (p - c).rotated(alpha) for p in points]
        if _matches_multiset(points, images, tol):
            count += 1
    return max(count, 1)


def mirror_axes(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> tuple[Axis, ...]:
    """All mirror axes of the point set.  Every axis passes through the
    centroid; results are deduplicated and sorted by angle in [0, pi)."""
    if len(points) <= 1:
        return ()
    c = centroid(points)
    layer = _reference_layer(points, c, tol)
    if not layer:
        return ()
    theta_base = angle_of(points[layer[0]] - c)
    angles: list[float] = []
    for i in layer:
        alpha = (theta_base + angle_of(points[i] - c)) / 2.0
        alpha = alpha if alpha >= 0.0 else alpha + math.pi
        alpha = math.fmod(alpha, math.pi)
        if alpha < 0.0:
            alpha += math.pi
        images = [c + _reflect(p - c, alpha) for p in points]
        if _matches_multiset(points, images, tol):
            angles.append(alpha)
    angles.sort()
    dedup: list[float] = []
    for a in angles:
        if any(abs(a - b) <= tol.eps or abs(abs(a - b) - math.pi) <= tol.eps for b in dedup):
            continue
        dedup.append(a)
    return tuple(Axis(c, Point(math.cos(a), math.sin(a))) for a in dedup)


def robots_on_axis(points: Sequence[Point], axis: Axis, tol: Tolerance = DEFAULT_TOL) -> tuple[int, ...]:
    out = []
    for i, p in enumerate(points):
        if abs((p - axis.point).cross(axis.direction)) <= tol.eps * max(1.0, axis.direction.norm()):
            out.append(i)
    return tuple(out)


def _has_duplicates(points: Sequence[Point], tol: Tolerance) -> bool:
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if tol.same_point(points[i], points[j]):
                return True
    return False


def symmetricity_rho(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> int:
    """Rotational order about the centroid, forced to 1 when a point
    occupies the centroid."""
    if _has_duplicates(points, tol):
        raise DuplicatePoints("symmetricity is undefined for coincident points")
    c = centroid(points)
    if any(tol.same_point(p, c) for p in points):
        return 1
    return rotational_order(points, tol)


def symmetry_report(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> SymmetryReport:
    rho = symmetricity_rho(points, tol)
    order = rotational_order(points, tol)
    axes = mirror_axes(points, tol)
    counts = tuple(len(robots_on_axis(points, ax, tol)) for ax in axes)
    c = centroid(points)
    central = any(tol.same_point(p, c) for p in points)
    return SymmetryReport(
        rho=rho,
        rotational_order=order,
        mirror_axes=axes,
        robot_counts_on_axes=counts,
        has_central_robot=central,
        is_central_symmetric=(order % 2 == 0),
    )


def center_robot_index(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> int | None:
    """Index of the unique robot on the center of the smallest enclosing
    circle, or None."""
    sec = smallest_enclosing_circle(points, tol)
    hits = [i for i, p in enumerate(points) if tol.same_point(p, sec.center)]
    return hits[0] if len(hits) == 1 else None


def classify(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> ConfigClass:
    """Feasibility-relevant classification of a configuration."""
    rc = center_robot_index(points, tol)
    k_wo = 0
    in_c_dot = False
    if rc is not None and len(points) >= 3:
        rest = [p for i, p in enumerate(points) if i != rc]
        k_wo = rotational_order(rest, tol)
        in_c_dot = k_wo > 1
    axes = mirror_axes(points, tol)
    counts = [len(robots_on_axis(points, ax, tol)) for ax in axes]
    return ConfigClass(
        in_c_dot=in_c_dot,
        k_without_center=k_wo,
        axis_with_single_robot=any(c == 1 for c in counts),
        unique_axis_no_robots=(len(axes) == 1 and counts[0] == 0),
        axis_count=len(axes),
    )


# --- view classes --------------------------------------------------------

def _congruent_about_origin(va: Sequence[Point], vb: Sequence[Point],
                            tol: Tolerance, allow_mirror: bool) -> bool:
    """Congruence of two local views by a rotation about the origin,
    optionally composed with a reflection."""
    if len(va) != len(vb):
        return False
    ra = sorted(p.norm() for p in va)
    rb = sorted(p.norm() for p in vb)
    if any(abs(a - b) > tol.eps for a, b in zip(ra, rb)):
        return False
    variants = [va]
    if allow_mirror:
        variants.append([p.mirrored() for p in va])
    anchor = max(variants[0], key=lambda p: p.norm())
    if anchor.norm() <= tol.eps:
        return True  # all points at the origin on both sides
    for cand in variants:
        a = max(cand, key=lambda p: p.norm())
        for b in vb:
            if abs(b.norm() - a.norm()) > tol.eps:
                continue
            alpha = ccw_angle(a, b)
            images = [p.rotated(alpha) for p in cand]
            if _matches_multiset(list(vb), images, tol):
                return True
    return False


def view_classes(points: Sequence[Point], frames: Sequence, tol: Tolerance = DEFAULT_TOL,
                 chirality: bool = True) -> list[list[int]]:
    """Partition robots by congruence of their local views.

    With chirality, views are compared up to rotation about the observer;
    without it, also up to reflection.  `frames` supplies per-robot
    rotation/mirror/scale attributes.
    """
    views: list[list[Point]] = []
    for i, p in enumerate(points):
        z = frames[i]
        views.append([
            inverse_transform(q - p, z.rotation, z.mirror, z.scale) for q in points
        ])
    classes: list[list[int]] = []
    for i in range(len(points)):
        placed = False
        for cls in classes:
            if _congruent_about_origin(views[cls[0]], views[i], tol, allow_mirror=not chirality):
                cls.append(i)
                placed = True
                break
        if not placed:
            classes.append([i])
    return classes


def rotation_angles(points: Sequence[Point], tol: Tolerance = DEFAULT_TOL) -> tuple[float, ...]:
    """All rotation angles in [0, 2*pi) that map the set onto itself."""
    if len(points) <= 1:
        return (0.0,)
    c = centroid(points)
    layer = _reference_layer(points, c, tol)
    if not layer:
        return (0.0,)
    base = points[layer[0]] - c
    out = []
    for i in layer:
        alpha = ccw_angle(base, points[i] - c)
        images = [c + (p - c).rotated(alpha) for p in points]
        if _matches_multiset(points, images, tol):
            out.append(norm_angle(alpha))
    return tuple(sorted(out))
