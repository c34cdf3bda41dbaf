"""Exact scalar and polynomial arithmetic shared by every other module.

Scalars are plain Python ``int`` or ``fractions.Fraction`` (the latter keeps
itself in canonical lowest terms with a positive denominator, which is
exactly the invariant we need).  Polynomials are immutable value objects over
those scalars; nothing in this package ever rounds.
"""
from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "Scalar",
    "binomial",
    "scalar_pow",
    "kronecker_delta",
    "as_integer",
    "Polynomial",
    "BiPolynomial",
    "X",
    "BI_X",
    "BI_S",
]

Scalar = int | Fraction


def binomial(n: int, k: int) -> int:
    """Binomial coefficient under the zero-on-negative convention.

    Returns ``n! / (k! (n-k)!)`` for ``n >= k >= 0`` and 0 whenever ``k < 0``,
    ``n < 0`` or ``k > n``.  Summations over rectangular index boxes rely on
    this guard to drop excluded terms instead of deriving per-identity index
    ranges.
    """
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def scalar_pow(base: Scalar, exponent: int) -> Scalar:
    """Exact integer power of a scalar; negative exponents give reciprocals."""
    if exponent >= 0:
        return base**exponent
    if base == 0:
        raise ZeroDivisionError("0 cannot be raised to a negative power")
    return Fraction(base) ** exponent


def kronecker_delta(p, q) -> int:
    """1 when the two exact values are equal, else 0.

    Arguments such as ``Fraction(m - 1, 2)`` are compared as exact rationals,
    never floored, so a half-integer argument can only match a half-integer.
    """
    return 1 if p == q else 0


def as_integer(value) -> int:
    """Return ``value`` as an int, raising if it is not an exact integer."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    raise ValueError(f"expected an exact integer, got {value!r}")


def _check_scalar(value) -> Scalar:
    # Floats are banned outright: one rounded coefficient poisons everything.
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError(f"coefficients must be int or Fraction, got {type(value).__name__}")
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


class Polynomial:
    """Dense univariate polynomial in x over exact scalars.

    Coefficients are stored lowest power first with no trailing zeros; the
    zero polynomial is the empty tuple and reports degree -inf.  Instances
    are immutable, so they are safe to share between threads and to cache.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cleaned = [_check_scalar(c) for c in coeffs]
        while cleaned and cleaned[-1] == 0:
            cleaned.pop()
        self.coeffs: tuple[Scalar, ...] = tuple(cleaned)

    @classmethod
    def monomial(cls, power: int, coeff: Scalar = 1) -> "Polynomial":
        if power < 0:
            raise ValueError("monomial power must be non-negative")
        return cls((0,) * power + (coeff,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def coefficient(self, power: int) -> Scalar:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return 0

    @staticmethod
    def _coerce(value):
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, bool):
            return None
        if isinstance(value, (int, Fraction)):
            return Polynomial((value,))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        summed = list(a)
        for i, c in enumerate(b):
            summed[i] = summed[i] + c
        return Polynomial(summed)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        prod = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
        return Polynomial(prod)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial((1,))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __call__(self, value):
        """Horner evaluation; works for scalars and for ring-valued arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash(("Polynomial", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Polynomial({self.coeffs!r})"

    def __str__(self):
        return _format_terms(
            ((c, _x_power_str(p)) for p, c in enumerate(self.coeffs) if c != 0)
        )


class BiPolynomial:
    """Sparse polynomial in the two variables x and s over exact scalars.

    Stored as a map from (x power, s power) to a nonzero coefficient;
    equality is entrywise.  Immutable by convention: the term map is never
    mutated after construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned: dict[tuple[int, int], Scalar] = {}
        for key, value in (terms or {}).items():
            px, ps = key
            if px < 0 or ps < 0:
                raise ValueError("negative exponents are not supported")
            value = _check_scalar(value)
            if value != 0:
                cleaned[(px, ps)] = value
        self.terms: dict[tuple[int, int], Scalar] = cleaned

    @classmethod
    def monomial(cls, x_power: int, s_power: int, coeff: Scalar = 1) -> "BiPolynomial":
        return cls({(x_power, s_power): coeff})

    def coefficient(self, x_power: int, s_power: int) -> Scalar:
        return self.terms.get((x_power, s_power), 0)

    @property
    def x_degree(self):
        return max((px for px, _ in self.terms), default=-math.inf)

    @property
    def s_degree(self):
        return max((ps for _, ps in self.terms), default=-math.inf)

    @staticmethod
    def _coerce(value):
        if isinstance(value, BiPolynomial):
            return value
        if isinstance(value, bool):
            return None
        if isinstance(value, (int, Fraction)):
            return BiPolynomial({(0, 0): value})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        summed = dict(self.terms)
        for key, value in other.terms.items():
            summed[key] = summed.get(key, 0) + value
        return BiPolynomial(summed)

    __radd__ = __add__

    def __neg__(self):
        return BiPolynomial({key: -value for key, value in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prod: dict[tuple[int, int], Scalar] = {}
        for (ax, asq), av in self.terms.items():
            for (bx, bs), bv in other.terms.items():
                key = (ax + bx, asq + bs)
                prod[key] = prod.get(key, 0) + av * bv
        return BiPolynomial(prod)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = BiPolynomial({(0, 0): 1})
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __call__(self, x_value, s_value):
        """Evaluate by Horner in x, with each x-row evaluated by Horner in s.

        The arguments may be scalars, Polynomial or BiPolynomial values, so
        this doubles as substitution/composition.
        """
        if not self.terms:
            return 0
        rows: dict[int, dict[int, Scalar]] = {}
        for (px, ps), coeff in self.terms.items():
            rows.setdefault(px, {})[ps] = coeff
        result = 0
        for px in range(max(rows), -1, -1):
            row = rows.get(px)
            inner = 0
            if row:
                for ps in range(max(row), -1, -1):
                    inner = inner * s_value + row.get(ps, 0)
            result = result * x_value + inner
        return result

    def __eq__(self, other):
        if isinstance(other, BiPolynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {(0, 0): other}
        return NotImplemented

    def __hash__(self):
        return hash(("BiPolynomial", frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"BiPolynomial({self.terms!r})"

    def __str__(self):
        ordered = sorted(
            self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])
        )
        return _format_terms(
            (coeff, _x_power_str(px) + _s_power_str(ps)) for (px, ps), coeff in ordered
        )


def _x_power_str(power: int) -> str:
    if power == 0:
        return ""
    return "x" if power == 1 else f"x^{power}"


def _s_power_str(power: int) -> str:
    if power == 0:
        return ""
    return "s" if power == 1 else f"s^{power}"


def _coeff_str(coeff: Scalar) -> str:
    if isinstance(coeff, Fraction) and coeff.denominator != 1:
        return f"({coeff})"
    return str(coeff)


def _format_terms(terms) -> str:
    pieces = []
    for coeff, variables in terms:
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        if variables and magnitude == 1:
            body = variables
        elif variables:
            body = f"{_coeff_str(magnitude)}{variables}"
        else:
            body = _coeff_str(magnitude)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces) if pieces else "0"


X = Polynomial((0, 1))
BI_X = BiPolynomial.monomial(1, 0)
BI_S = BiPolynomial.monomial(0, 1)
