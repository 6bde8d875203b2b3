"""The boundary set C for (q+1)-regular graphs and its interior region.

C is the union of the circle |u| = q^(-1/2) with the two real segments
[-1, -1/q] and [1/q, 1]. All zeros of the zeta function of a finite
(q+1)-regular graph lie on C. The interior region (open disk of radius
q^(-1/2) minus the parts of the real slits inside it) is where analytic
N-th roots and the L2 log-determinant are taken; for q = 1 the segments
degenerate to the two points +-1 and the region is the open unit disk
without them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError


def _check_q(q: int) -> None:
    if not isinstance(q, (int, np.integer)) or q < 1:
        raise InputError("q must be an integer >= 1")


def _segment_distance(x: np.ndarray, y: np.ndarray, a: float, b: float) -> np.ndarray:
    """Distance from points x+iy to the real segment [a, b] (a <= b)."""
    dx = np.maximum(np.maximum(a - x, x - b), 0.0)
    return np.hypot(dx, y)


def slit_distance(q: int, u) -> "float | np.ndarray":
    """Distance to the real slits [-1, -1/q] and [1/q, 1]."""
    _check_q(q)
    z = np.asarray(u, dtype=complex)
    x, y = z.real, z.imag
    d = np.minimum(
        _segment_distance(x, y, 1.0 / q, 1.0),
        _segment_distance(x, y, -1.0, -1.0 / q),
    )
    return float(d) if np.isscalar(u) or d.shape == () else d


def distance_to_C(q: int, u) -> "float | np.ndarray":
    """Distance to the boundary set C (circle plus slits)."""
    _check_q(q)
    z = np.asarray(u, dtype=complex)
    circle = np.abs(np.abs(z) - q ** -0.5)
    d = np.minimum(circle, slit_distance(q, z))
    return float(d) if np.isscalar(u) or d.shape == () else d


def omega_contains(q: int, u, margin: float = 0.0) -> "bool | np.ndarray":
    """Membership in the interior region, optionally shrunk by a margin.

    With margin = 0 this is strict membership in the open region. With
    margin > 0 the point must satisfy |u| <= q^(-1/2) - margin and keep
    distance >= margin from the real slits.
    """
    _check_q(q)
    if margin < 0:
        raise InputError("margin must be >= 0")
    z = np.asarray(u, dtype=complex)
    radius = q ** -0.5
    dist = slit_distance(q, z)
    if margin == 0.0:
        inside = (np.abs(z) < radius) & (dist > 0.0)
    else:
        inside = (np.abs(z) <= radius - margin) & (dist >= margin)
    return bool(inside) if np.isscalar(u) or inside.shape == () else inside


def distance_to_negative_ray(w) -> "float | np.ndarray":
    """Distance from w to the ray (-inf, 0], the branch cut of the principal log."""
    z = np.asarray(w, dtype=complex)
    d = np.where(z.real <= 0.0, np.abs(z.imag), np.abs(z))
    return float(d) if np.isscalar(w) or d.shape == () else d


@dataclass(frozen=True)
class RegionOmega:
    """The open region bounded by C for a fixed q."""

    q: int

    def __post_init__(self) -> None:
        _check_q(self.q)

    @property
    def disk_radius(self) -> float:
        return self.q ** -0.5

    def contains(self, u, margin: float = 0.0):
        return omega_contains(self.q, u, margin)

    def distance_to_boundary(self, u):
        return distance_to_C(self.q, u)


def set_c_polyline(q: int, points_per_part: int = 256) -> list[tuple[str, complex]]:
    """Discretized polyline of C for plotting: circle and the two slits."""
    _check_q(q)
    if points_per_part < 2:
        raise InputError("points_per_part must be >= 2")
    out: list[tuple[str, complex]] = []
    radius = q ** -0.5
    for k in range(points_per_part + 1):
        phi = 2.0 * np.pi * k / points_per_part
        out.append(("circle", complex(radius * np.cos(phi), radius * np.sin(phi))))
    for part, a, b in (
        ("slit_pos", 1.0 / q, 1.0),
        ("slit_neg", -1.0, -1.0 / q),
    ):
        for k in range(points_per_part):
            t = a + (b - a) * k / max(points_per_part - 1, 1)
            out.append((part, complex(t, 0.0)))
    return out
