"""Torus symbols, quadrature, and the series oracle.

Independent oracles: central binomial closed-walk counts on the integer
lattices, a dense theta-grid evaluation of the log-determinant, and the
counting definition of the spectral distribution.
"""

import math

import numpy as np
import pytest

from graphzeta import (
    DomainError,
    InputError,
    NumericError,
    UnsupportedError,
    VoltageAssignment,
    bouquet_graph,
    cycle_graph,
    empirical_cdf,
    equivariant_walk_counts,
    l2_log_det,
    l2_series_oracle,
    l2_zeta_abelian,
    path_graph,
    spectrum,
    symbol_spectral_cdf,
    torus_l2,
    torus_symbol,
    tree_l2_reference,
)

from corpus import B2, LOOP

VZ = VoltageAssignment.free(((1,),), rank=1)
VZ2 = VoltageAssignment.free(((1, 0), (0, 1)), rank=2)


def test_symbol_of_the_loop_is_two_cos():
    sym = torus_symbol(LOOP, VZ)
    thetas = np.array([[0.0], [np.pi / 3], [np.pi / 2]])
    mats = sym.matrices(thetas)
    assert mats.shape == (3, 1, 1)
    assert np.allclose(mats[:, 0, 0], 2.0 * np.cos(thetas[:, 0]))


def test_symbol_at_zero_is_adjacency():
    for base, volt in [(LOOP, VZ), (B2, VZ2)]:
        sym = torus_symbol(base, volt)
        assert np.allclose(sym.matrix(np.zeros(volt.rank)), base.adjacency)


def test_symbol_is_hermitian():
    sym = torus_symbol(B2, VZ2)
    rng = np.random.default_rng(3)
    for theta in rng.uniform(-np.pi, np.pi, (5, 2)):
        m = sym.matrix(theta)
        assert np.allclose(m, m.conj().T)


def test_symbol_requires_free_voltages():
    with pytest.raises(InputError):
        torus_symbol(LOOP, VoltageAssignment.cyclic((1,), 5))


def test_walk_counts_z():
    # closed walks on Z with steps +-1: W_{2m} = C(2m, m), odd counts vanish
    counts = equivariant_walk_counts(torus_symbol(LOOP, VZ), 8)
    expected = [math.comb(m, m // 2) if m % 2 == 0 else 0 for m in range(9)]
    assert counts == expected
    assert counts[2] == 2 and counts[4] == 6


def test_walk_counts_z2():
    # Z^2 with 4 unit steps: W_{2m} = C(2m, m)^2
    counts = equivariant_walk_counts(torus_symbol(B2, VZ2), 6)
    expected = [
        math.comb(m, m // 2) ** 2 if m % 2 == 0 else 0 for m in range(7)
    ]
    assert counts == expected
    assert counts[2] == 4 and counts[4] == 36


def test_tree_cover_log_det_vanishes():
    # the loop unrolls to the 2-regular tree (the line); q = 1 makes the
    # normalized log-determinant vanish identically on the region
    sym = torus_symbol(LOOP, VZ)
    for u in (0.5, -0.3, 0.2 + 0.4j, 0.6j):
        assert abs(l2_log_det(sym, 1, u)) < 1e-10


def test_quadrature_matches_theta_grid_oracle():
    # dense single-shot grid evaluation, written out longhand
    sym = torus_symbol(B2, VZ2)
    q, u = 3, 0.1 + 0.05j
    m = 257
    thetas = 2.0 * np.pi * np.arange(m) / m
    acc = 0.0 + 0.0j
    for t1 in thetas:
        row = np.empty(m, dtype=complex)
        for k, t2 in enumerate(thetas):
            lam = 2.0 * np.cos(t1) + 2.0 * np.cos(t2)
            row[k] = np.log(1.0 - lam * u + q * u * u)
        acc += row.sum()
    oracle = acc / (m * m)
    assert l2_log_det(sym, q, u) == pytest.approx(oracle, abs=1e-9)


def test_quadrature_matches_series_on_lattices():
    cases = [
        (torus_symbol(LOOP, VZ), 1, [0.1, -0.2, 0.1 + 0.1j, 0.24]),
        (torus_symbol(B2, VZ2), 3, [0.05, -0.06, 0.04 + 0.04j, 0.12]),
    ]
    for sym, q, us in cases:
        for u in us:
            series = l2_series_oracle(sym, q, u)
            quad = l2_log_det(sym, q, u)
            assert quad == pytest.approx(series, abs=1e-8), (q, u)


def test_series_oracle_enforces_small_u():
    sym = torus_symbol(B2, VZ2)
    with pytest.raises(DomainError):
        l2_series_oracle(sym, 3, 0.2)  # needs |u| < 1/8


def test_quadrature_domain_gating():
    sym = torus_symbol(B2, VZ2)
    with pytest.raises(DomainError):
        l2_log_det(sym, 3, 0.5)  # on the slit [1/3, 1]
    with pytest.raises(DomainError):
        l2_log_det(sym, 3, 3.0 ** -0.5)  # on the circle
    with pytest.raises(InputError):
        l2_log_det(sym, 0, 0.1)


def test_l2_zeta_values():
    # rank-1 tree cover: Z = (1 - u^2)^(-chi) = 1 for chi = 0
    assert l2_zeta_abelian(LOOP, VZ, 0.3) == pytest.approx(1.0)
    # bouquet over Z^2: compare against the series route end to end
    u = 0.05
    sym = torus_symbol(B2, VZ2)
    expected = (1.0 - u * u) ** 1 * np.exp(l2_series_oracle(sym, 3, u))
    assert l2_zeta_abelian(B2, VZ2, u) == pytest.approx(expected, abs=1e-10)


def test_l2_zeta_requires_regular_base():
    with pytest.raises(UnsupportedError):
        l2_zeta_abelian(path_graph(3), VoltageAssignment.free(((1,), (0,))), 0.1)


def test_torus_l2_wrapper():
    target = torus_l2(B2, VZ2)
    assert target.q == 3 and target.chi_base == -1
    u = 0.1j
    assert target(u) == pytest.approx(l2_zeta_abelian(B2, VZ2, u))
    # det ratio strips the (1 - u^2) prefactor
    assert target.det_pi(u) == pytest.approx(
        np.exp(l2_log_det(torus_symbol(B2, VZ2), 3, u))
    )


def test_tree_reference():
    ref = tree_l2_reference(LOOP)
    assert ref(0.4) == 1.0
    assert ref.chi_base == 0 and ref.q == 1
    bare = tree_l2_reference()
    assert bare(0.9j) == 1.0
    with pytest.raises(UnsupportedError):
        tree_l2_reference(path_graph(3))


def test_empirical_cdf_counting():
    s = spectrum(cycle_graph(4))  # eigenvalues -2, 0, 0, 2
    cdf = empirical_cdf(s, 4)
    # query between jumps; the jumps themselves carry eigensolver noise
    assert cdf(-3.0) == 0.0
    assert cdf(-1.0) == pytest.approx(0.25)
    assert cdf(1.0) == pytest.approx(0.75)
    assert cdf(2.5) == pytest.approx(1.0)
    assert cdf.mass == pytest.approx(1.0)
    rows = cdf.to_rows()
    assert rows[0][0] == pytest.approx(-2.0)


def test_empirical_cdf_vectorized():
    cdf = empirical_cdf(spectrum(cycle_graph(6)), 6)
    lam = np.array([-3.0, 0.5, 3.0])
    out = cdf(lam)
    assert out.shape == (3,)
    assert out[0] == 0.0 and out[2] == pytest.approx(1.0)


def test_symbol_cdf_against_counting_oracle():
    # fraction of theta samples with 2 cos(theta) <= lam, counted directly
    sym = torus_symbol(LOOP, VZ)
    lambdas = np.array([-1.5, -0.5, 0.0, 0.5, 1.5])
    got = symbol_spectral_cdf(sym, lambdas, points_per_dim=4096)
    m = 4096
    thetas = 2.0 * np.pi * np.arange(m) / m
    vals = 2.0 * np.cos(thetas)
    oracle = np.array([np.mean(vals <= lam) for lam in lambdas])
    assert np.allclose(got, oracle, atol=1e-12)


def test_quadrature_cap_raises():
    sym = torus_symbol(B2, VZ2)
    with pytest.raises(NumericError):
        l2_log_det(sym, 3, 0.1, points=4, tol=1e-30, cap=8)
