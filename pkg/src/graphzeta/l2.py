"""L2 (von Neumann) zeta data for infinite abelian covers.

A free-abelian voltage assignment on a finite base graph describes an
infinite Z^k cover. Its adjacency operator diagonalizes over the k-torus
into a field of v x v Hermitian matrices (the symbol); normalized traces
become torus integrals, evaluated here by the periodic trapezoid rule with
adaptive refinement. The L2 zeta function of the cover is

    Z(u) = (1 - u^2)^(-chi) * exp( (2 pi)^(-k) Int log det(I - d(t) u + q u^2) dt )

with chi and q taken from the base. Empirical spectral distribution
functions of finite covers, which converge to the L2 spectral function,
live here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .covers import VoltageAssignment
from .errors import DomainError, InputError, NumericError, UnsupportedError
from .graphs import MultiGraph, SpectrumData, regularity
from .region import distance_to_C, omega_contains

QUADRATURE_TOL = 1e-10
QUADRATURE_CAP = 2**14


@dataclass(frozen=True)
class SpectralCDF:
    """A right-continuous step function F(lam) = (jumps at or below lam) / N."""

    jump_points: np.ndarray
    values: np.ndarray
    normalization: int

    def __call__(self, lam):
        idx = np.searchsorted(self.jump_points, lam, side="right")
        padded = np.concatenate(([0.0], self.values))
        out = padded[idx]
        return float(out) if np.isscalar(lam) else out

    @property
    def mass(self) -> float:
        return float(self.values[-1]) if len(self.values) else 0.0

    def to_rows(self) -> list[tuple[float, float]]:
        return [(float(x), float(v)) for x, v in zip(self.jump_points, self.values)]


def empirical_cdf(s: SpectrumData, n: int) -> SpectralCDF:
    """Eigenvalue counting function with mass (number of eigenvalues) / n.

    For a tower level of index n over a one-vertex base the total mass is 1;
    in general it is the base's vertex count.
    """
    if n < 1:
        raise InputError("normalization must be >= 1")
    points, counts = np.unique(np.asarray(s.eigenvalues, dtype=float), return_counts=True)
    values = np.cumsum(counts) / float(n)
    points.setflags(write=False)
    values.setflags(write=False)
    return SpectralCDF(jump_points=points, values=values, normalization=n)


# ---------------------------------------------------------------------------
# torus symbols


@dataclass(frozen=True)
class TorusSymbol:
    """Matrix-valued trigonometric polynomial d(t) on the k-torus.

    Terms are (x, y, frequency, coefficient): entry (x, y) picks up
    coefficient * exp(i t . frequency). Symbols built from a voltage
    assignment are Hermitian for every real t, and d(0) is the adjacency
    matrix of the base graph.
    """

    vertex_count: int
    rank: int
    terms: tuple[tuple[int, int, tuple[int, ...], int], ...]

    def matrices(self, thetas: np.ndarray) -> np.ndarray:
        """Stack of symbol matrices at rows of `thetas` (shape (m, rank))."""
        thetas = np.asarray(thetas, dtype=float)
        if thetas.ndim == 1:
            thetas = thetas[None, :]
        if thetas.shape[1] != self.rank:
            raise InputError(f"theta rows must have length {self.rank}")
        out = np.zeros((thetas.shape[0], self.vertex_count, self.vertex_count), dtype=complex)
        for x, y, freq, coeff in self.terms:
            out[:, x, y] += coeff * np.exp(1j * (thetas @ np.asarray(freq, dtype=float)))
        return out

    def matrix(self, theta: Sequence[float]) -> np.ndarray:
        return self.matrices(np.asarray(theta, dtype=float)[None, :])[0]

    def eigenvalue_samples(self, thetas: np.ndarray) -> np.ndarray:
        """Real eigenvalues at each theta row; shape (m, vertex_count)."""
        if self.vertex_count == 1:
            acc = np.zeros(len(thetas), dtype=complex)
            for _, _, freq, coeff in self.terms:
                acc += coeff * np.exp(1j * (thetas @ np.asarray(freq, dtype=float)))
            return acc.real[:, None]
        return np.linalg.eigvalsh(self.matrices(thetas))


def torus_symbol(base: MultiGraph, volt: VoltageAssignment) -> TorusSymbol:
    """The symbol of the Z^k cover given by a free abelian voltage assignment.

    Every edge contributes both orientations, so loops add
    coefficient * (exp(i t.s) + exp(-i t.s)) to their diagonal entry and
    the symbol at t = 0 equals the base adjacency matrix (loops count 2).
    """
    if volt.is_finite:
        raise InputError("torus symbols need a free abelian (rank k) voltage assignment")
    if len(volt.voltages) != base.edge_count:
        raise InputError(f"{len(volt.voltages)} voltages for {base.edge_count} edges")
    acc: dict[tuple[int, int, tuple[int, ...]], int] = {}
    for (x, y), sigma in zip(base.edges, volt.voltages):
        neg = tuple(-c for c in sigma)
        acc[(x, y, sigma)] = acc.get((x, y, sigma), 0) + 1
        acc[(y, x, neg)] = acc.get((y, x, neg), 0) + 1
    terms = tuple(
        (x, y, freq, coeff) for (x, y, freq), coeff in sorted(acc.items())
    )
    return TorusSymbol(vertex_count=base.vertex_count, rank=volt.rank, terms=terms)


# ---------------------------------------------------------------------------
# torus quadrature


def _grid_log_det(sym: TorusSymbol, q: int, u: complex, m: int) -> complex:
    """Periodic trapezoid value of the log-determinant integral at m^k nodes."""
    k = sym.rank
    axes = 2.0 * np.pi * np.arange(m) / m
    total = m**k
    block = max(1024, 4_000_000 // max(1, sym.vertex_count**2))
    acc = 0.0 + 0.0j
    for start in range(0, total, block):
        idx = np.arange(start, min(start + block, total))
        coords = np.unravel_index(idx, (m,) * k)
        thetas = np.column_stack([axes[c] for c in coords])
        lams = sym.eigenvalue_samples(thetas)
        w = 1.0 - lams * u + q * u * u
        acc += np.sum(np.log(w))
    return complex(acc / total)


def l2_log_det(
    sym: TorusSymbol,
    q: int,
    u: complex,
    points: int = 16,
    tol: float = QUADRATURE_TOL,
    cap: int = QUADRATURE_CAP,
    adaptive: bool = True,
) -> complex:
    """Normalized trace of log(I - d(t) u + q u^2) over the torus.

    Starts from `points` nodes per dimension and doubles until two
    successive values agree within `tol`; raises NumericError if the cap
    on nodes per dimension is reached first. The evaluation point must lie
    inside the open region bounded by C and at least 1e-12 away from it.
    """
    if not isinstance(q, (int, np.integer)) or q < 1:
        raise InputError("q must be an integer >= 1")
    if points < 4:
        raise InputError("need at least 4 quadrature points per dimension")
    u = complex(u)
    if not omega_contains(q, u, 0.0) or distance_to_C(q, u) <= 1e-12:
        raise DomainError(
            f"u = {u} is outside the open region bounded by C (or within 1e-12 of it)"
        )
    m = points
    value = _grid_log_det(sym, q, u, m)
    if not adaptive:
        return value
    while True:
        if 2 * m > cap:
            raise NumericError(
                f"torus quadrature did not converge within {cap} points per dimension"
            )
        m *= 2
        refined = _grid_log_det(sym, q, u, m)
        if abs(refined - value) < tol:
            return refined
        value = refined


def l2_zeta_abelian(
    base: MultiGraph,
    volt: VoltageAssignment,
    u: complex,
    points: int = 16,
    tol: float = QUADRATURE_TOL,
    cap: int = QUADRATURE_CAP,
) -> complex:
    """The L2 zeta value (1 - u^2)^(-chi) * exp(torus log-determinant)."""
    info = regularity(base)
    if not info.is_regular or info.q is None or info.q < 1:
        raise UnsupportedError("the L2 zeta function is computed for regular bases")
    sym = torus_symbol(base, volt)
    u = complex(u)
    log_det = l2_log_det(sym, info.q, u, points=points, tol=tol, cap=cap)
    return (1.0 - u * u) ** (-base.euler_characteristic) * np.exp(log_det)


# ---------------------------------------------------------------------------
# series oracle: equivariant walk counting


def equivariant_walk_counts(sym: TorusSymbol, length: int) -> list[int]:
    """W_j = closed walks of length j in the Z^k cover, summed over base
    vertices, for j = 0..length; exact integer dynamic programming."""
    if length < 0:
        raise InputError("length must be >= 0")
    steps: list[tuple[int, int, tuple[int, ...], int]] = list(sym.terms)
    counts = [0] * (length + 1)
    counts[0] = sym.vertex_count
    for start in range(sym.vertex_count):
        state: dict[tuple[int, tuple[int, ...]], int] = {
            (start, (0,) * sym.rank): 1
        }
        for j in range(1, length + 1):
            nxt: dict[tuple[int, tuple[int, ...]], int] = {}
            for (x, disp), cnt in state.items():
                for sx, sy, freq, coeff in steps:
                    if sx != x:
                        continue
                    key = (sy, tuple(d + f for d, f in zip(disp, freq)))
                    nxt[key] = nxt.get(key, 0) + cnt * coeff
            state = nxt
            counts[j] += state.get((start, (0,) * sym.rank), 0)
    return counts


def l2_series_oracle(
    sym: TorusSymbol, q: int, u: complex, terms: int = 40
) -> complex:
    """Truncated series for the torus log-determinant, valid for small |u|.

    Expands log(I - (d u - q u^2 I)) and takes normalized traces, which
    reduces to exact closed-walk counts; requires |u| < 1 / (2 (q + 1)) so
    that 40-ish terms reach full double precision. Independent of the
    quadrature route.
    """
    if not isinstance(q, (int, np.integer)) or q < 1:
        raise InputError("q must be an integer >= 1")
    if terms < 1:
        raise InputError("terms must be >= 1")
    u = complex(u)
    limit = 1.0 / (2.0 * (q + 1.0))
    if abs(u) >= limit:
        raise DomainError(f"series oracle needs |u| < {limit:.6g} (got {abs(u):.6g})")
    walks = equivariant_walk_counts(sym, terms)
    total = 0.0 + 0.0j
    for m in range(1, terms + 1):
        inner = 0.0 + 0.0j
        for j in range(m + 1):
            inner += (
                math.comb(m, j)
                * (u**j)
                * ((-q * u * u) ** (m - j))
                * float(walks[j])
            )
        total -= inner / m
    return total


# ---------------------------------------------------------------------------
# packaged L2 zeta evaluators


@dataclass(frozen=True)
class L2Zeta:
    """An L2 zeta function as an evaluator plus the base invariants."""

    chi_base: int
    q: int
    evaluate: Callable[[complex], complex]
    description: str = "L2 zeta"

    def __call__(self, u: complex) -> complex:
        return complex(self.evaluate(complex(u)))

    def det_pi(self, u: complex) -> complex:
        """The L2 determinant (1 - u^2)^chi * Z(u)."""
        u = complex(u)
        return (1.0 - u * u) ** self.chi_base * self(u)


def tree_l2_reference(base: MultiGraph | None = None) -> L2Zeta:
    """The constant-1 L2 zeta of a regular tree cover.

    Passing the base graph records its chi and q so that det_pi returns
    (1 - u^2)^chi; with no base the reference is the bare constant.
    """
    chi, q = 0, 1
    if base is not None:
        info = regularity(base)
        if not info.is_regular or info.q is None or info.q < 1:
            raise UnsupportedError("tree reference needs a regular base")
        chi, q = base.euler_characteristic, info.q
    return L2Zeta(
        chi_base=chi,
        q=q,
        evaluate=lambda u: 1.0 + 0.0j,
        description="constant 1 (regular tree cover)",
    )


def torus_l2(
    base: MultiGraph,
    volt: VoltageAssignment,
    points: int = 16,
    tol: float = QUADRATURE_TOL,
    cap: int = QUADRATURE_CAP,
) -> L2Zeta:
    """The quadrature-backed L2 zeta of the Z^k cover given by `volt`."""
    info = regularity(base)
    if not info.is_regular or info.q is None or info.q < 1:
        raise UnsupportedError("the L2 zeta function is computed for regular bases")
    return L2Zeta(
        chi_base=base.euler_characteristic,
        q=info.q,
        evaluate=lambda u: l2_zeta_abelian(base, volt, u, points=points, tol=tol, cap=cap),
        description=f"torus quadrature, rank {volt.rank}",
    )


def symbol_spectral_cdf(
    sym: TorusSymbol, lambdas: np.ndarray, points_per_dim: int = 512
) -> np.ndarray:
    """F(lam) = average over the torus of #{eigenvalues of d(t) <= lam}.

    The limit of the empirical spectral distributions of the finite
    quotients; mass is the base's vertex count.
    """
    lambdas = np.asarray(lambdas, dtype=float)
    k = sym.rank
    m = points_per_dim
    axes = 2.0 * np.pi * np.arange(m) / m
    total = m**k
    block = max(1024, 4_000_000 // max(1, sym.vertex_count**2))
    counts = np.zeros(len(lambdas))
    for start in range(0, total, block):
        idx = np.arange(start, min(start + block, total))
        coords = np.unravel_index(idx, (m,) * k)
        thetas = np.column_stack([axes[c] for c in coords])
        samples = np.sort(sym.eigenvalue_samples(thetas).ravel())
        counts += np.searchsorted(samples, lambdas, side="right")
    return counts / total
