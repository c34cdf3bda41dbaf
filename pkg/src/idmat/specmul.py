"""Specially multiplicative arithmetic functions, three routes, one oracle.

A multiplicative function f is specially multiplicative when its prime-power
values obey f(p^(k+1)) = f(p) f(p^k) - g(p) f(p^(k-1)) for some per-prime
g(p); equivalently it satisfies the Busche-Ramanujan convolution

    f(m) f(n) = sum_{d | gcd(m,n)} f(mn / d^2) * fA(d)

with fA the completely multiplicative extension of g.  Prime-power values
are computed three independent ways (the recurrence, a binomial closed form,
and a 2x2 matrix factorization) and must always agree.

The Ramanujan tau function is the marquee instance (g(p) = p^11); its values
are cross-checked against a q-series oracle, the coefficient expansion of
q * prod_{n>=1} (1 - q^n)^24.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .matpow import Matrix2, mat_pow_closed
from .rings import Scalar, binomial

__all__ = [
    "MissingPrimeError",
    "is_prime",
    "factorize",
    "SpecMulSpec",
    "value_pp_recurrence",
    "value_pp_closed",
    "value_pp_matrix",
    "value_at",
    "f_a_at",
    "busche_ramanujan_sides",
    "QSeries",
    "tau_qseries",
    "tau_spec",
]

_INPUT_CAP = 2**63 - 1  # trial division is desk-scale only


class MissingPrimeError(ValueError):
    """A needed prime has no (f(p), g(p)) data in the spec."""

    def __init__(self, prime: int):
        super().__init__(f"no data for prime {prime}")
        self.prime = prime


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; raises above 2^63 - 1."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > _INPUT_CAP:
        raise ValueError(f"inputs are capped at {_INPUT_CAP}")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _parse_exact(text: str) -> Scalar:
    value = Fraction(text)
    return value.numerator if value.denominator == 1 else value


@dataclass(frozen=True)
class SpecMulSpec:
    """Per-prime data (f(p), g(p)) defining a specially multiplicative f.

    f(1) = 1 is implicit.  Keys are verified prime at construction; the map
    is never mutated afterwards, so instances are safe for concurrent reads.
    """

    prime_data: Mapping[int, tuple[Scalar, Scalar]]

    def __post_init__(self):
        checked = {}
        for p, pair in self.prime_data.items():
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            f_p, g_p = pair
            if isinstance(f_p, bool) or not isinstance(f_p, (int, Fraction)):
                raise TypeError(f"f({p}) must be exact, got {type(f_p).__name__}")
            if isinstance(g_p, bool) or not isinstance(g_p, (int, Fraction)):
                raise TypeError(f"g({p}) must be exact, got {type(g_p).__name__}")
            checked[p] = (f_p, g_p)
        object.__setattr__(self, "prime_data", checked)

    def primes(self) -> list[int]:
        return sorted(self.prime_data)

    def pair(self, p: int) -> tuple[Scalar, Scalar]:
        try:
            return self.prime_data[p]
        except KeyError:
            raise MissingPrimeError(p) from None

    @classmethod
    def from_text(cls, text: str) -> "SpecMulSpec":
        """Parse the plain-text format: one ``p f(p) g(p)`` triple per line.

        Values are integers or rationals written a/b; blank lines and
        ``#`` comments are ignored.
        """
        data: dict[int, tuple[Scalar, Scalar]] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected 'p f(p) g(p)', got {raw!r}")
            try:
                p = int(parts[0])
                f_p = _parse_exact(parts[1])
                g_p = _parse_exact(parts[2])
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
            if p in data:
                raise ValueError(f"line {lineno}: duplicate prime {p}")
            data[p] = (f_p, g_p)
        return cls(data)

    @classmethod
    def from_file(cls, path) -> "SpecMulSpec":
        return cls.from_text(Path(path).read_text())


def value_pp_recurrence(spec: SpecMulSpec, p: int, k: int) -> Scalar:
    """f(p^k) via f(p^(k+1)) = f(p) f(p^k) - g(p) f(p^(k-1))."""
    if k < 0:
        raise ValueError("k must be non-negative")
    f_p, g_p = spec.pair(p)
    prev, cur = 1, f_p
    if k == 0:
        return 1
    for _ in range(k - 1):
        prev, cur = cur, f_p * cur - g_p * prev
    return cur


def value_pp_closed(spec: SpecMulSpec, p: int, k: int) -> Scalar:
    """f(p^k) = sum_j (-1)^j C(k-j, j) f(p)^(k-2j) g(p)^j."""
    if k < 0:
        raise ValueError("k must be non-negative")
    f_p, g_p = spec.pair(p)
    total = 0
    for j in range(k // 2 + 1):
        term = binomial(k - j, j) * f_p ** (k - 2 * j) * g_p**j
        total = total - term if j % 2 else total + term
    return total


def value_pp_matrix(spec: SpecMulSpec, p: int, k: int) -> Scalar:
    """f(p^k) for k >= 3 via the matrix factorization route.

    The recurrence makes ((f(p^k), f(p^(k-1))), (f(p^(k-1)), f(p^(k-2))))
    equal to (((0,0),(1+g,0)) + M) * M^(k-1) with M = ((f(p),1),(-g(p),0));
    the value is read off the (1,1) entry, with M^(k-1) assembled by the
    closed form.
    """
    if k < 3:
        raise ValueError("the matrix route needs k >= 3")
    f_p, g_p = spec.pair(p)
    m = Matrix2(f_p, 1, -g_p, 0)
    prefix = Matrix2(0, 0, 1 + g_p, 0) + m
    return (prefix * mat_pow_closed(m, k - 1)).a


def value_at(spec: SpecMulSpec, n: int) -> Scalar:
    """f(n) by factoring n and multiplying prime-power values."""
    if n < 1:
        raise ValueError("n must be positive")
    result: Scalar = 1
    for p, e in factorize(n).items():
        result = result * value_pp_recurrence(spec, p, e)
    return result


def f_a_at(spec: SpecMulSpec, d: int) -> Scalar:
    """The completely multiplicative companion: fA(p^k) = g(p)^k."""
    if d < 1:
        raise ValueError("d must be positive")
    result: Scalar = 1
    for p, e in factorize(d).items():
        result = result * spec.pair(p)[1] ** e
    return result


def busche_ramanujan_sides(spec: SpecMulSpec, m: int, n: int):
    """Both sides of f(m) f(n) = sum_{d | gcd(m,n)} f(mn/d^2) fA(d)."""
    lhs = value_at(spec, m) * value_at(spec, n)
    rhs: Scalar = 0
    product = m * n
    for d in _divisors(math.gcd(m, n)):
        rhs = rhs + value_at(spec, product // (d * d)) * f_a_at(spec, d)
    return lhs, rhs


# ---------------------------------------------------------------------------
# q-series oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QSeries:
    """Integer power-series coefficients, index n holding the q^n term."""

    coefficients: tuple[int, ...]

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)


def _euler_product(limit: int) -> list[int]:
    # prod_{n=1}^{limit} (1 - q^n) mod q^(limit+1), one sparse factor at a time.
    coeffs = [0] * (limit + 1)
    coeffs[0] = 1
    for n in range(1, limit + 1):
        coeffs[n:] = [a - b for a, b in zip(coeffs[n:], coeffs)]
    return coeffs


def _mul_trunc_schoolbook(a: list[int], b: list[int], limit: int) -> list[int]:
    result = [0] * (limit + 1)
    for i, av in enumerate(a[: limit + 1]):
        if av:
            for j, bv in enumerate(b[: limit + 1 - i]):
                if bv:
                    result[i + j] += av * bv
    return result


def _mul_trunc(a: list[int], b: list[int], limit: int) -> list[int]:
    """Truncated integer-series product via Kronecker substitution.

    Coefficients are packed into fixed-width slots of one big integer so the
    whole convolution becomes a single native multiplication; signed values
    are handled by splitting into non-negative parts.  Exactness is checked
    against the schoolbook version in the tests.
    """
    a = a[: limit + 1]
    b = b[: limit + 1]
    a_max = max((abs(v) for v in a), default=0)
    b_max = max((abs(v) for v in b), default=0)
    if a_max == 0 or b_max == 0:
        return [0] * (limit + 1)
    bits = a_max.bit_length() + b_max.bit_length() + min(len(a), len(b)).bit_length() + 2
    width = (bits + 7) // 8

    def pack(values):
        return int.from_bytes(
            b"".join(v.to_bytes(width, "little") for v in values), "little"
        )

    a_pos = pack([v if v > 0 else 0 for v in a])
    a_neg = pack([-v if v < 0 else 0 for v in a])
    b_pos = pack([v if v > 0 else 0 for v in b])
    b_neg = pack([-v if v < 0 else 0 for v in b])
    plus = a_pos * b_pos + a_neg * b_neg
    minus = a_pos * b_neg + a_neg * b_pos
    slots = len(a) + len(b)  # one spare slot absorbs the top carry
    raw_plus = plus.to_bytes(width * slots, "little")
    raw_minus = minus.to_bytes(width * slots, "little")
    result = []
    for i in range(limit + 1):
        lo = i * width
        hi = lo + width
        result.append(
            int.from_bytes(raw_plus[lo:hi], "little")
            - int.from_bytes(raw_minus[lo:hi], "little")
        )
    return result


def _pow_trunc(base: list[int], exponent: int, limit: int) -> list[int]:
    """Binary exponentiation of a truncated integer series."""
    result = [1] + [0] * limit
    acc = base[: limit + 1]
    while exponent:
        if exponent & 1:
            result = _mul_trunc(result, acc, limit)
        exponent >>= 1
        if exponent:
            acc = _mul_trunc(acc, acc, limit)
    return result


def tau_qseries(limit: int) -> QSeries:
    """Coefficients of q * prod_{n>=1} (1 - q^n)^24 up to q^limit.

    These are the Ramanujan tau values; the series is built independently of
    every other route in this module so it can serve as their oracle.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    euler = _euler_product(limit - 1)
    e24 = _pow_trunc(euler, 24, limit - 1)
    coeffs = [0] + e24
    if coeffs[0] != 0 or coeffs[1] != 1:
        raise ArithmeticError("tau series failed its leading-coefficient check")
    return QSeries(tuple(coeffs))


def tau_spec(series: QSeries, primes) -> SpecMulSpec:
    """Spec {f(p) = tau(p), g(p) = p^11} read off the q-series oracle."""
    data = {}
    for p in primes:
        if p > series.truncation:
            raise ValueError(f"series truncated below prime {p}")
        data[p] = (series[p], p**11)
    return SpecMulSpec(data)
