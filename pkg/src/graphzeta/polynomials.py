"""Dense polynomials with exact integer coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


def _normalize(coeffs: Sequence[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out) if out else (0,)


@dataclass(frozen=True)
class IntPolynomial:
    """Coefficients in ascending powers; index = power of u."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", _normalize(self.coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, u):
        # Horner; works for int, Fraction, complex and numpy arrays alike.
        acc = self.coefficients[-1] + (u * 0)
        for c in reversed(self.coefficients[:-1]):
            acc = acc * u + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return IntPolynomial(
            tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))
        )

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return IntPolynomial(tuple(out))

    def __pow__(self, n: int) -> "IntPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = IntPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divide_exact(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Exact division over the integers; raises ValueError if not exact."""
        if divisor.coefficients == (0,):
            raise ValueError("division by the zero polynomial")
        num = [Fraction(c) for c in self.coefficients]
        den = [Fraction(c) for c in divisor.coefficients]
        if len(num) < len(den):
            raise ValueError("not divisible: degree too small")
        quot = [Fraction(0)] * (len(num) - len(den) + 1)
        for k in range(len(quot) - 1, -1, -1):
            q = num[k + len(den) - 1] / den[-1]
            quot[k] = q
            if q:
                for j, d in enumerate(den):
                    num[k + j] -= q * d
        if any(num):
            raise ValueError("not divisible: nonzero remainder")
        if any(q.denominator != 1 for q in quot):
            raise ValueError("quotient is not integral")
        return IntPolynomial(tuple(int(q) for q in quot))

    def divides(self, other: "IntPolynomial") -> bool:
        try:
            other.divide_exact(self)
            return True
        except ValueError:
            return False

    def log_series(self, order: int) -> tuple[Fraction, ...]:
        """Taylor coefficients of log(p(u)) up to u^order; needs p(0) = 1.

        Uses the exact recurrence m*l_m = m*a_m - sum_{j<m} j*l_j*a_{m-j}.
        """
        a = self.coefficients
        if a[0] != 1:
            raise ValueError("log series requires constant coefficient 1")
        coeff = lambda m: Fraction(a[m]) if m < len(a) else Fraction(0)
        logs: list[Fraction] = [Fraction(0)] * (order + 1)
        for m in range(1, order + 1):
            acc = m * coeff(m)
            for j in range(1, m):
                acc -= j * logs[j] * coeff(m - j)
            logs[m] = acc / m
        return tuple(logs[1:])

    def to_list(self) -> list[int]:
        return list(self.coefficients)

    @classmethod
    def from_list(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(tuple(int(c) for c in coeffs))
