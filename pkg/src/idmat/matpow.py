"""2x2 matrices over an exact commutative ring, with a closed-form power.

Ring elements are anything supporting +, -, * and == with int coercion:
plain integers, Fraction, Polynomial and BiPolynomial all qualify.  The
power of a matrix comes in two deliberately unrelated flavours: a literal
repeated-multiplication oracle, and an assembly from the scalar sequence

    y_n = sum_{i=0}^{floor(n/2)} C(n-i, i) * T^(n-2i) * (-D)^i

where T is the trace and D the determinant.  The two must agree entrywise;
the test suite leans on that equivalence everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .rings import binomial

__all__ = [
    "Matrix2",
    "YSequence",
    "y_closed_form",
    "mat_pow_closed",
    "mat_pow_oracle",
]


class Matrix2:
    """A 2x2 matrix; trace and determinant are always recomputed on access."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    @classmethod
    def identity(cls) -> "Matrix2":
        # Plain ints coerce into any of the supported rings on multiplication.
        return cls(1, 0, 0, 1)

    @property
    def trace(self):
        return self.a + self.d

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other):
        if isinstance(other, Matrix2):
            return Matrix2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        return Matrix2(self.a * other, self.b * other, self.c * other, self.d * other)

    def __rmul__(self, other):
        # Scalars only: commutative rings, so the side does not matter.
        return Matrix2(other * self.a, other * self.b, other * self.c, other * self.d)

    def __add__(self, other):
        if not isinstance(other, Matrix2):
            return NotImplemented
        return Matrix2(
            self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d
        )

    def __eq__(self, other):
        if not isinstance(other, Matrix2):
            return NotImplemented
        return (
            self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
        )

    def __repr__(self):
        return f"Matrix2({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


@dataclass(frozen=True)
class YSequence:
    """The recurrence y_{k+1} = trace * y_k + neg_det * y_{k-1}, y_0 = 1.

    This is the recursive counterpart of :func:`y_closed_form`; keeping both
    lets tests cross-check the binomial sum against a route that involves no
    binomials at all.
    """

    trace: Any
    neg_det: Any
    values: tuple

    @classmethod
    def generate(cls, trace, neg_det, length: int) -> "YSequence":
        """Build y_0 .. y_length."""
        if length < 0:
            raise ValueError("length must be non-negative")
        values = [1]
        if length >= 1:
            values.append(trace)
        for _ in range(length - 1):
            values.append(trace * values[-1] + neg_det * values[-2])
        return cls(trace, neg_det, tuple(values))

    @classmethod
    def for_matrix(cls, matrix: Matrix2, length: int) -> "YSequence":
        return cls.generate(matrix.trace, -matrix.det, length)

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return len(self.values)


def y_closed_form(trace, det, n: int):
    """The binomial sum y_n for given trace and determinant, evaluated exactly.

    Powers of the trace are built incrementally (one multiplication by T^2
    per term) so polynomial arguments stay cheap.  n = 0 returns the ring
    unit as a plain 1.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    neg_det = -det
    neg_det_powers = [1]
    for _ in range(n // 2):
        neg_det_powers.append(neg_det_powers[-1] * neg_det)
    trace_sq = trace * trace
    trace_pow = trace if n % 2 else 1
    total = 0
    for i in range(n // 2, -1, -1):
        total = total + binomial(n - i, i) * trace_pow * neg_det_powers[i]
        if i:
            trace_pow = trace_pow * trace_sq
    return total


def mat_pow_closed(matrix: Matrix2, n: int) -> Matrix2:
    """A^n assembled from y_n and y_{n-1}; no chain of matrix products.

    Defined for n >= 1 as

        ((y_n - d*y_{n-1}, b*y_{n-1}), (c*y_{n-1}, y_n - a*y_{n-1})).

    n = 0 returns the identity by convention (the assembled form would need
    y_{-1}, which does not exist).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Matrix2.identity()
    trace, det = matrix.trace, matrix.det
    y_n = y_closed_form(trace, det, n)
    y_prev = y_closed_form(trace, det, n - 1)
    return Matrix2(
        y_n - matrix.d * y_prev,
        matrix.b * y_prev,
        matrix.c * y_prev,
        y_n - matrix.a * y_prev,
    )


def mat_pow_oracle(matrix: Matrix2, n: int) -> Matrix2:
    """A^n by literal repeated multiplication (n - 1 products).

    Deliberately naive: the oracle must share no algebraic shortcut with
    :func:`mat_pow_closed`, otherwise comparing the two proves nothing.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Matrix2.identity()
    acc = matrix
    for _ in range(n - 1):
        acc = acc * matrix
    return acc
