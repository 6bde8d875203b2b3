"""Zeta functions of finite multigraphs.

The zeta function used here is the product of (1 - u^length) over the
equivalence classes of primitive reduced closed paths; it is the reciprocal
of the classical Euler-product convention, and it is a polynomial:

    Z(X, u) = (1 - u^2)^(-chi) * det(I - A u + Q u^2)

where A is the adjacency matrix (loops count 2 on the diagonal), Q is the
diagonal matrix of degree - 1, and chi is the Euler characteristic. The
determinant polynomial has exact integer coefficients; this module computes
it exactly, evaluates the zeta function, locates its zeros for regular
graphs, and provides analytic N-th roots of the determinant inside the
region bounded by the set C.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import cache

import numpy as np

from .errors import DomainError, InputError, NumericError, UnsupportedError
from .graphs import MultiGraph, RegularityInfo, regularity, spectrum
from .polynomials import IntPolynomial
from .region import distance_to_C, omega_contains

_CUT_MARGIN = 1e-12  # points this close to C (hence to a branch cut) are rejected
_EXACT_VERTEX_CAP = 64


@dataclass(frozen=True)
class ZetaFunction:
    """chi, the integer determinant polynomial, and regularity data.

    `source` remembers the graph the polynomial came from so that zeros can
    be located through the eigenvalue route instead of polynomial
    root-finding.
    """

    chi: int
    det_poly: IntPolynomial
    q_info: RegularityInfo
    source: MultiGraph | None = None

    def __call__(self, u):
        return zeta_eval(self, u)


@dataclass(frozen=True)
class ZetaZero:
    value: complex
    multiplicity: int
    distance: float


@dataclass(frozen=True)
class ZeroReport:
    zeros: tuple[ZetaZero, ...]
    q: int
    max_distance: float

    def to_rows(self) -> list[tuple[float, float, int, float]]:
        return [
            (z.value.real, z.value.imag, z.multiplicity, z.distance) for z in self.zeros
        ]


# ---------------------------------------------------------------------------
# determinant polynomial


def _det_samples(g: MultiGraph, us: np.ndarray) -> np.ndarray:
    """det(I - A u + Q u^2) at the given complex points, evaluated in chunks."""
    a = g.adjacency
    qdiag = np.asarray(g.degree_sequence, dtype=np.float64) - 1.0
    eye = np.eye(g.vertex_count)
    out = np.empty(len(us), dtype=complex)
    chunk = max(1, 2_000_000 // max(1, g.vertex_count**2))
    for start in range(0, len(us), chunk):
        block = us[start : start + chunk]
        mats = (
            eye[None, :, :]
            - a[None, :, :] * block[:, None, None]
            + np.diag(qdiag)[None, :, :] * (block**2)[:, None, None]
        )
        out[start : start + chunk] = np.linalg.det(mats)
    return out


def _interpolated_det_poly(g: MultiGraph) -> IntPolynomial:
    v = g.vertex_count
    degree_bound = 2 * v
    n = 1 << max(2, (degree_bound + 1).bit_length())
    nodes = np.exp(2j * np.pi * np.arange(n) / n)
    samples = _det_samples(g, nodes)
    if not np.all(np.isfinite(samples)):
        raise NumericError("determinant samples overflowed; retry with exact=True")
    # samples[k] = p(w^k) with w = exp(2i pi / n), so the forward
    # transform divided by n inverts the evaluation
    raw = np.fft.fft(samples) / n
    if np.max(np.abs(raw.imag)) > 0.25 or np.max(np.abs(raw.real - np.rint(raw.real))) > 0.25:
        raise NumericError(
            "interpolated coefficients are too far from integers; retry with exact=True"
        )
    coeffs = [int(round(c)) for c in raw.real[: degree_bound + 1]]
    if any(abs(c) > 0.25 for c in raw.real[degree_bound + 1 :]):
        raise NumericError("interpolation produced spurious high-order terms")
    poly = IntPolynomial(tuple(coeffs))
    _verify_det_poly(g, poly)
    return poly


def _verify_det_poly(g: MultiGraph, poly: IntPolynomial) -> None:
    """Residual check at fresh points; regular graphs get an eigenvalue cross-check."""
    max_q = max(1, max(g.degree_sequence) - 1)
    r = 0.3 / max_q**0.5
    fresh = r * np.exp(2j * np.pi * (np.arange(7) + 0.37) / 7)
    direct = _det_samples(g, fresh)
    residual = np.max(np.abs(poly(fresh) - direct))
    if residual >= 1e-6:
        raise NumericError(
            f"interpolated determinant residual {residual:.3g} exceeds 1e-6; "
            "retry with exact=True"
        )
    info = regularity(g)
    if info.is_regular and info.q is not None and info.q >= 0:
        eigs = spectrum(g).eigenvalues
        prod = np.prod(1.0 - eigs[None, :] * fresh[:, None] + info.q * fresh[:, None] ** 2, axis=1)
        scale = np.maximum(1.0, np.abs(prod))
        if np.max(np.abs(poly(fresh) - prod) / scale) >= 1e-8:
            raise NumericError("determinant disagrees with the eigenvalue factorization")


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _exact_det_poly(g: MultiGraph) -> IntPolynomial:
    v = g.vertex_count
    if v > _EXACT_VERTEX_CAP:
        raise InputError(
            f"exact determinant supports at most {_EXACT_VERTEX_CAP} vertices (got {v})"
        )
    adj = [[int(round(x)) for x in row] for row in g.adjacency]
    qdiag = [d - 1 for d in g.degree_sequence]
    ts = list(range(-v, v + 1))
    values = []
    for t in ts:
        mat = [
            [
                (1 if i == j else 0) - adj[i][j] * t + (qdiag[i] * t * t if i == j else 0)
                for j in range(v)
            ]
            for i in range(v)
        ]
        values.append(_bareiss_det(mat))
    # Newton divided differences, then expansion; all arithmetic exact.
    dd = [Fraction(val) for val in values]
    for level in range(1, len(ts)):
        for i in range(len(ts) - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (ts[i] - ts[i - level])
    coeffs = [dd[-1]]
    for i in range(len(ts) - 2, -1, -1):
        new = [Fraction(0)] * (len(coeffs) + 1)
        for p, c in enumerate(coeffs):
            new[p] += -ts[i] * c
            new[p + 1] += c
        new[0] += dd[i]
        coeffs = new
    if any(c.denominator != 1 for c in coeffs):
        raise NumericError("exact interpolation produced non-integer coefficients")
    return IntPolynomial(tuple(int(c) for c in coeffs))


@cache
def det_poly(g: MultiGraph, exact: bool = False) -> IntPolynomial:
    """Exact integer coefficients of det(I - A u + Q u^2).

    The default path samples the determinant on roots of unity,
    interpolates by FFT, rounds to integers, and verifies the result by
    re-evaluation (plus the eigenvalue factorization when the graph is
    regular). If rounding is unstable for very large graphs it raises
    NumericError; `exact=True` switches to fraction-free elimination at
    integer sample points, exact for up to 64 vertices.
    """
    if exact:
        return _exact_det_poly(g)
    return _interpolated_det_poly(g)


def zeta_function(g: MultiGraph, exact: bool = False) -> ZetaFunction:
    return ZetaFunction(
        chi=g.euler_characteristic,
        det_poly=det_poly(g, exact),
        q_info=regularity(g),
        source=g,
    )


def zeta_eval(z: ZetaFunction, u):
    """Evaluate Z(u) = (1 - u^2)^(-chi) * det_poly(u)."""
    us = np.asarray(u, dtype=complex)
    if z.chi > 0 and np.any(np.abs(1.0 - us * us) < 1e-12):
        raise DomainError("zeta has a pole at u = +-1 when chi > 0")
    value = (1.0 - us * us) ** (-z.chi) * z.det_poly(us)
    return complex(value) if us.shape == () else value


# ---------------------------------------------------------------------------
# zeros


def zeta_zeros(z: ZetaFunction, group_tol: float = 1e-8) -> ZeroReport:
    """All zeros with multiplicity, for regular graphs only.

    Each adjacency eigenvalue lam contributes the roots of
    q u^2 - lam u + 1 via the quadratic formula; a negative Euler
    characteristic adds zeros at +-1 from the (1 - u^2) prefactor. The
    report records every zero's distance to the set C.
    """
    info = z.q_info
    if not info.is_regular or info.q is None or info.q < 1:
        raise UnsupportedError("zeros are located only for regular graphs with q >= 1")
    if z.source is None:
        raise InputError("this ZetaFunction does not carry its source graph")
    q = info.q
    eigs = spectrum(z.source).eigenvalues
    bound = max(1.0, float(spectrum(z.source).spectral_bound))
    # group equal eigenvalues so multiplicities carry through the formula
    groups: list[tuple[float, int]] = []
    for lam in eigs:
        if groups and abs(lam - groups[-1][0]) <= group_tol * bound:
            groups[-1] = (groups[-1][0], groups[-1][1] + 1)
        else:
            groups.append((float(lam), 1))
    raw: list[tuple[complex, int]] = []
    for lam, mult in groups:
        disc = lam * lam - 4.0 * q
        if abs(disc) < 1e-9:
            raw.append((complex(lam / (2.0 * q)), 2 * mult))
        else:
            root = cmath.sqrt(complex(disc))
            raw.append(((lam + root) / (2.0 * q), mult))
            raw.append(((lam - root) / (2.0 * q), mult))
    if z.chi < 0:
        raw.append((1.0 + 0.0j, -z.chi))
        raw.append((-1.0 + 0.0j, -z.chi))
    raw.sort(key=lambda item: (item[0].real, item[0].imag))
    merged: list[tuple[complex, int]] = []
    for value, mult in raw:
        if merged and abs(value - merged[-1][0]) <= group_tol:
            merged[-1] = (merged[-1][0], merged[-1][1] + mult)
        else:
            merged.append((value, mult))
    zeros = tuple(
        ZetaZero(value, mult, float(distance_to_C(q, value))) for value, mult in merged
    )
    max_distance = max((zz.distance for zz in zeros), default=0.0)
    return ZeroReport(zeros=zeros, q=q, max_distance=max_distance)


# ---------------------------------------------------------------------------
# analytic roots inside the region


def _require_regular_q(g: MultiGraph) -> int:
    info = regularity(g)
    if not info.is_regular or info.q is None or info.q < 1:
        raise UnsupportedError("operation requires a regular graph with q >= 1")
    return info.q


def _gate_omega(q: int, us: np.ndarray) -> None:
    if not np.all(omega_contains(q, us, 0.0)):
        raise DomainError("evaluation point outside the open region bounded by C")
    if np.min(distance_to_C(q, us)) <= _CUT_MARGIN:
        raise DomainError(
            f"evaluation point within {_CUT_MARGIN} of the set C; refusing to take logs"
        )


def nth_root_det(g: MultiGraph, n: int, u):
    """The analytic N-th root prod_lam exp(log(1 - lam u + q u^2) / N).

    Principal logarithms are safe here: for u inside the region, each
    factor 1 - lam u + q u^2 avoids the ray (-inf, 0] for every real
    eigenvalue lam in [-(q+1), q+1]. Accepts a scalar or an array of
    points; points on or within 1e-12 of C are rejected.
    """
    if n < 1:
        raise InputError("root order must be >= 1")
    q = _require_regular_q(g)
    us = np.asarray(u, dtype=complex)
    _gate_omega(q, us)
    eigs = spectrum(g).eigenvalues
    flat = us.reshape(-1)
    w = 1.0 - eigs[None, :] * flat[:, None] + q * (flat**2)[:, None]
    values = np.exp(np.sum(np.log(w), axis=1) / n).reshape(us.shape)
    return complex(values) if us.shape == () else values


def normalized_zeta(g: MultiGraph, n: int, chi_base: int, u):
    """Z(B_i, u)^(1/N_i) = (1 - u^2)^(-chi_base) * det^(1/N_i) for a level of a tower."""
    if g.euler_characteristic != n * chi_base:
        raise InputError(
            f"chi({g.name or 'level'}) = {g.euler_characteristic} != {n} * {chi_base}"
        )
    us = np.asarray(u, dtype=complex)
    value = (1.0 - us * us) ** (-chi_base) * nth_root_det(g, n, us)
    return complex(value) if us.shape == () else value


# ---------------------------------------------------------------------------
# functional equation (regular graphs)


def functional_equation_sides(g: MultiGraph, u: complex) -> tuple[complex, complex]:
    """LHS = Z(1/(q u)); RHS = ((1-u^2)/(q^2 u^2 - 1))^chi q^(v-2e) u^(-2e) Z(u)."""
    q = _require_regular_q(g)
    u = complex(u)
    if abs(u) < 1e-12:
        raise DomainError("functional equation is undefined at u = 0")
    for bad, why in ((1.0, "u = +-1"), (1.0 / (q * q), "q^2 u^2 = 1")):
        if abs(u * u - bad) < 1e-12:
            raise DomainError(f"functional equation has a pole where {why}")
    z = zeta_function(g)
    v, e = g.vertex_count, g.edge_count
    lhs = zeta_eval(z, 1.0 / (q * u))
    rhs = (
        ((1.0 - u * u) / (q * q * u * u - 1.0)) ** z.chi
        * q ** (v - 2 * e)
        * u ** (-2 * e)
        * zeta_eval(z, u)
    )
    return lhs, rhs


def functional_equation_residual(g: MultiGraph, u: complex) -> complex:
    """LHS - RHS; its magnitude should be < 1e-9 * max(|LHS|, |RHS|, 1)."""
    lhs, rhs = functional_equation_sides(g, u)
    return lhs - rhs


# ---------------------------------------------------------------------------
# Euler-product log coefficients via the oriented-edge transfer operator


def _mat_mult(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        row_a = a[i]
        row_out = out[i]
        for k in range(n):
            coeff = row_a[k]
            if coeff:
                row_b = b[k]
                for j in range(n):
                    row_out[j] += coeff * row_b[j]
    return out


def transfer_operator(g: MultiGraph) -> list[list[int]]:
    """0/1 matrix on oriented edges: consecutive without immediate reversal.

    Oriented edge 2i is edge i traversed as stored, 2i+1 the reverse; the
    reversal of index a is a XOR 1. Traversing a loop twice in the same
    direction is allowed; immediately re-traversing any edge backwards is
    not.
    """
    tails = []
    heads = []
    for x, y in g.edges:
        tails += [x, y]
        heads += [y, x]
    m = len(tails)
    t = [[0] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            if heads[a] == tails[b] and b != a ^ 1:
                t[a][b] = 1
    return t


def closed_walk_counts(g: MultiGraph, terms: int) -> list[int]:
    """N_m = trace(T^m) for m = 1..terms, exactly."""
    t = transfer_operator(g)
    m = len(t)
    if m == 0:
        return [0] * terms
    counts = []
    power = t
    for _ in range(terms):
        counts.append(sum(power[i][i] for i in range(m)))
        if len(counts) < terms:
            power = _mat_mult(power, t)
    return counts


def euler_log_coeffs(g: MultiGraph, terms: int) -> tuple[Fraction, ...]:
    """Exact Taylor coefficients of log Z from the Euler product: c_m = -N_m / m."""
    if terms < 1:
        raise InputError("terms must be >= 1")
    return tuple(Fraction(-n_m, m) for m, n_m in enumerate(closed_walk_counts(g, terms), 1))


def zeta_log_coeffs(g: MultiGraph, terms: int, exact: bool = False) -> tuple[Fraction, ...]:
    """The same coefficients from the closed form (1-u^2)^(-chi) det(...)."""
    if terms < 1:
        raise InputError("terms must be >= 1")
    poly = det_poly(g, exact)
    if poly.coefficients[0] != 1:
        raise NumericError("determinant polynomial must have constant coefficient 1")
    logs = list(poly.log_series(terms))
    chi = g.euler_characteristic
    for j in range(1, terms // 2 + 1):
        logs[2 * j - 1] += Fraction(chi, j)
    return tuple(logs)
