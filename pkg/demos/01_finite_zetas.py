"""Zeta functions of small graphs: determinant polynomials, zeros, and
the Euler-product cross-check.

Run: python3 demos/01_finite_zetas.py
"""

from fractions import Fraction

from graphzeta import (
    complete_graph,
    cycle_graph,
    det_poly,
    euler_log_coeffs,
    functional_equation_residual,
    petersen_graph,
    zeta_eval,
    zeta_function,
    zeta_log_coeffs,
    zeta_zeros,
)


def show(g):
    z = zeta_function(g)
    print(f"\n{g.name}: {g.vertex_count} vertices, {g.edge_count} edges, chi = {z.chi}")
    print("  det poly:", det_poly(g).to_list())
    print("  Z(0.1)  :", zeta_eval(z, 0.1))


def main():
    print("== determinant polynomials ==")
    for g in (cycle_graph(3), cycle_graph(6), complete_graph(4), petersen_graph()):
        show(g)

    print("\n== the n-cycle has exactly two primes, so Z = (1 - u^n)^2 ==")
    for n in (3, 5, 8):
        print(f"  C{n}:", det_poly(cycle_graph(n)).to_list())

    print("\n== all zeros of a regular graph lie on the set C ==")
    report = zeta_zeros(zeta_function(complete_graph(4)))
    for zero in report.zeros:
        print(f"  u = {zero.value:.6f}  multiplicity {zero.multiplicity}"
              f"  dist to C = {zero.distance:.2e}")
    print("  max distance:", report.max_distance)

    print("\n== Euler product log vs the closed form, exact rationals ==")
    g = complete_graph(4)
    euler = euler_log_coeffs(g, 8)
    closed = zeta_log_coeffs(g, 8)
    for m, (a, b) in enumerate(zip(euler, closed), 1):
        marker = "ok" if a == b else "MISMATCH"
        print(f"  c_{m} = {a} vs {b}  {marker}")
    assert euler == closed

    print("\n== functional equation residual at a few points ==")
    for u in (0.3 + 0.2j, -0.7 + 0.1j, 1.2 - 0.4j):
        r = functional_equation_residual(g, u)
        print(f"  u = {u}: residual {abs(r):.2e}")

    print("\nc_3 of K4 is", euler[2], "= -(number of oriented triangles)/3 =",
          Fraction(-24, 3))


if __name__ == "__main__":
    main()
