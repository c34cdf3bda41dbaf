"""Catalog of verified identities plus an exhaustive parameter-sweep engine.

Every catalog entry evaluates both sides of one identity exactly (integers,
rationals, polynomials or whole matrices) for a single parameter assignment.
The sweep engine grinds entire parameter boxes and collects *all*
counterexamples instead of stopping at the first, because two entries
("cubic3-printed" and "tracepoly-printed") reproduce known misprints on
purpose: a run in which they pass would itself be a bug.
"""
from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterator, Mapping, Sequence

from .fibpoly import (
    fib_functional_eq_check,
    trace_poly,
    trace_poly_closed,
    trace_poly_recurrence,
    trace_power_expand,
    y_poly,
)
from .matpow import Matrix2, mat_pow_closed
from .rings import (
    BI_S,
    BI_X,
    BiPolynomial,
    Polynomial,
    X,
    binomial,
    kronecker_delta,
    scalar_pow,
)

__all__ = [
    "kronecker_delta",
    "mns_sides",
    "trace_sum_sides",
    "nmw_sides",
    "determinant_sides",
    "pwr2_sides",
    "cubic3_sides",
    "cubic3_poly_sides",
    "addition_sides",
    "bhatwadekar_roy_sides",
    "geometric_matrix_sides",
    "waring_sides",
    "LimitResult",
    "cf_limit",
    "IdentityDef",
    "IDENTITIES",
    "IdentityReport",
    "sweep",
]

REPORT_SCHEMA = 1


# ---------------------------------------------------------------------------
# Scalar identities: both sides of each, exactly
# ---------------------------------------------------------------------------

def mns_sides(m: int, n: int, s: int, box: int | None = None):
    """The four-index identity in (m, n, s).

    lhs = sum_{i,j,k,t} 2^(1+2t-mn+n) * (-1)^(nk+i(n+1)) / (1 + d)
          * C(m-1-i, i) C(m-1-2i, k) C(n(m-1-2(i+k)), 2j)
          * C(j, t-n(i+k)) C(n-1-s+t, s-t),

    where d = 1 exactly when (m-1)/2 = i+k as rationals, and the indices run
    over all integers that keep every binomial entry non-negative.  The
    right side is C(mn-1-s, s).  With ``box`` given, the sum literally runs
    over the rectangle [0, box]^4 relying on the zero-on-negative guard;
    otherwise equivalent tight ranges are used.  Both must agree, which the
    tests confirm on widened boxes.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if not 0 <= s <= (m * n - 1) // 2:
        raise ValueError(f"s out of range for m={m}, n={n}: {s}")
    rhs = binomial(m * n - 1 - s, s)
    if box is not None:
        return _mns_lhs_box(m, n, s, box), rhs
    # Accumulate 2^(2t+1) / (1+d) scaled terms over the common denominator
    # 2^(mn-n); every partial stays an integer.
    acc = 0
    for i in range((m - 1) // 2 + 1):
        b_i = binomial(m - 1 - i, i)
        if not b_i:
            continue
        for k in range(m - 1 - 2 * i + 1):
            b_k = binomial(m - 1 - 2 * i, k)
            if not b_k:
                continue
            width = n * (m - 1 - 2 * (i + k))
            negative = (n * k + i * (n + 1)) % 2
            halved = kronecker_delta(Fraction(m - 1, 2), i + k)
            t_base = n * (i + k)
            for j in range(width // 2 + 1):
                b_j = binomial(width, 2 * j)
                if not b_j:
                    continue
                for t in range(max(0, t_base), min(s, t_base + j) + 1):
                    b_t = binomial(j, t - t_base)
                    if not b_t:
                        continue
                    b_s = binomial(n - 1 - s + t, s - t)
                    if not b_s:
                        continue
                    term = b_i * b_k * b_j * b_t * b_s << (2 * t + 1 - halved)
                    acc += -term if negative else term
    return Fraction(acc, 1 << (m * n - n)), rhs


def _mns_lhs_box(m: int, n: int, s: int, box: int) -> Fraction:
    # Literal rectangular iteration; O(box^4), for guard-equivalence tests only.
    acc = Fraction(0)
    half = Fraction(m - 1, 2)
    for i in range(box + 1):
        for k in range(box + 1):
            for j in range(box + 1):
                for t in range(box + 1):
                    prod = (
                        binomial(m - 1 - i, i)
                        * binomial(m - 1 - 2 * i, k)
                        * binomial(n * (m - 1 - 2 * (i + k)), 2 * j)
                        * binomial(j, t - n * (i + k))
                        * binomial(n - 1 - s + t, s - t)
                    )
                    if not prod:
                        continue
                    if (n * k + i * (n + 1)) % 2:
                        prod = -prod
                    term = prod * scalar_pow(2, 1 + 2 * t - m * n + n)
                    acc += term / (1 + kronecker_delta(half, i + k))
    return acc


def trace_sum_sides(n: int, s: int):
    """(1/2^(n-2s-1)) sum_{j=s}^{floor(n/2)} C(n,2j) C(j,s) vs (n/(n-s)) C(n-s,s)."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= s <= n // 2:
        raise ValueError(f"s out of range for n={n}: {s}")
    sigma = sum(binomial(n, 2 * j) * binomial(j, s) for j in range(s, n // 2 + 1))
    lhs = sigma * scalar_pow(2, 2 * s + 1 - n)
    rhs = Fraction(n, n - s) * binomial(n - s, s)
    return lhs, rhs


def nmw_sides(n: int, m: int, w: int):
    """The three-binomial alternating-sum identity in (n, m, w).

    lhs = sum_{k=0}^{n-1} C(n-1-k,k) C(n,w+k) C(k+w,m-k-w) (-1)^k
    rhs = sum_{k=-2w-n+m+1}^{m-w} C(n,k+w) C(n,n+k+w-m) C(k+n+2w-m-1,k) (-1)^k

    An empty summation range on the right counts as zero.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= m <= 2 * n:
        raise ValueError(f"m out of range for n={n}: {m}")
    if not -n <= w <= n:
        raise ValueError(f"w out of range for n={n}: {w}")
    lhs = 0
    for k in range(n):
        prod = (
            binomial(n - 1 - k, k)
            * binomial(n, w + k)
            * binomial(k + w, m - k - w)
        )
        if prod:
            lhs += -prod if k % 2 else prod
    rhs = 0
    for k in range(-2 * w - n + m + 1, m - w + 1):
        prod = (
            binomial(n, k + w)
            * binomial(n, n + k + w - m)
            * binomial(k + n + 2 * w - m - 1, k)
        )
        if prod:
            rhs += -prod if k % 2 else prod
    return lhs, rhs


def determinant_sides(n: int, s: int):
    """sum_j C(n-s+j, s-j) C(n-j, j) vs sum_j C(n+1-s+j, s-j) C(n-1-j, j)."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= s <= n - 1:
        raise ValueError(f"s out of range for n={n}: {s}")
    lhs = sum(binomial(n - s + j, s - j) * binomial(n - j, j) for j in range(s + 1))
    rhs = sum(
        binomial(n + 1 - s + j, s - j) * binomial(n - 1 - j, j) for j in range(s + 1)
    )
    return lhs, rhs


def pwr2_sides(n: int, s: int):
    """Three expressions for C(2n-s-1, s); all returned, all must agree.

    expr1 = sum_i C(n-i-1,i) C(n-2i-1,s-2i) 2^(s-2i) (-1)^i
    expr2 = sum_{i<=n/2} (n/(n-i)) C(n-i,i) C(n+i-s-1,s-i)
    expr3 = C(2n-s-1, s)
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= s <= n - 1:
        raise ValueError(f"s out of range for n={n}: {s}")
    expr1 = 0
    for i in range(s // 2 + 1):
        prod = binomial(n - i - 1, i) * binomial(n - 2 * i - 1, s - 2 * i)
        if prod:
            term = prod << (s - 2 * i)
            expr1 += -term if i % 2 else term
    expr2 = Fraction(0)
    for i in range(n // 2 + 1):
        prod = binomial(n - i, i) * binomial(n + i - s - 1, s - i)
        if prod:
            expr2 += Fraction(n, n - i) * prod
    expr3 = binomial(2 * n - s - 1, s)
    return expr1, expr2, expr3


def cubic3_sides(n: int, s: int, printed: bool = False):
    """The cube-comparison identity; rhs = C(3n-s-1, s).

    lhs = sum_i 3^(s-1-3i) C(n-i-1, i)
            * ( C(u, s-3i-1) + 3*C(u, s-3i) )

    with u = n-2i-1.  The as-printed variant uses u = n-2i instead, which is
    a known misprint: at n = 1, s = 1 it yields 4 against 1.  Each surviving
    i-group must be an integer despite the negative powers of three; that is
    enforced, not assumed.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= s <= (3 * n - 1) // 2:
        raise ValueError(f"s out of range for n={n}: {s}")
    lhs = Fraction(0)
    for i in range(n // 2 + 1):
        outer = binomial(n - i - 1, i)
        if not outer:
            continue
        upper = n - 2 * i if printed else n - 2 * i - 1
        inner = binomial(upper, s - 3 * i - 1) + 3 * binomial(upper, s - 3 * i)
        if not inner:
            continue
        term = Fraction(3) ** (s - 1 - 3 * i) * outer * inner
        if term.denominator != 1:
            raise ArithmeticError(
                f"non-integral term group at n={n}, s={s}, i={i}: {term}"
            )
        lhs += term
    return lhs, binomial(3 * n - s - 1, s)


def cubic3_poly_sides(n: int):
    """The polynomial identity behind the cube comparison, as polynomials.

    sum_s C(3n-s-1, s) x^s  =  (x+1) * sum_i C(n-i-1, i) (3x+1)^(n-2i-1) x^(3i)
    """
    if n < 1:
        raise ValueError("n must be positive")
    lhs = Polynomial(
        [binomial(3 * n - s - 1, s) for s in range((3 * n - 1) // 2 + 1)]
    )
    base = Polynomial((1, 3))
    powers = [Polynomial((1,))]
    for _ in range(n - 1):
        powers.append(powers[-1] * base)
    total = Polynomial()
    for i in range((n - 1) // 2 + 1):
        coeff = binomial(n - i - 1, i)
        if coeff:
            total = total + coeff * powers[n - 2 * i - 1] * Polynomial.monomial(3 * i)
    rhs = Polynomial((1, 1)) * total
    return lhs, rhs


def addition_sides(m: int, n: int, s: int):
    """The index-addition identity; rhs = C(m+n-s, s).

    lhs = sum_i [ C(m-i,i) C(n-s+i,s-i) + C(m-i-1,i) C(n-s+i,s-i-1) ]
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if not 0 <= s <= (m + n) // 2:
        raise ValueError(f"s out of range for m={m}, n={n}: {s}")
    lhs = 0
    for i in range(min(m // 2, s) + 1):
        lhs += binomial(m - i, i) * binomial(n - s + i, s - i)
        lhs += binomial(m - i - 1, i) * binomial(n - s + i, s - i - 1)
    return lhs, binomial(m + n - s, s)


# ---------------------------------------------------------------------------
# Polynomial and matrix identities
# ---------------------------------------------------------------------------

def bhatwadekar_roy_sides(n: int):
    """The Bhatwadekar-Roy polynomial identity, fully expanded.

    sum_i (-1)^i C(n-i, i) x^i (1+x)^(n-2i)  =  1 + x + ... + x^n
    """
    if n < 1:
        raise ValueError("n must be positive")
    base = Polynomial((1, 1))
    powers = [Polynomial((1,))]
    for _ in range(n):
        powers.append(powers[-1] * base)
    lhs = Polynomial()
    for i in range(n // 2 + 1):
        coeff = binomial(n - i, i)
        if coeff:
            term = coeff * Polynomial.monomial(i) * powers[n - 2 * i]
            lhs = lhs + (-term if i % 2 else term)
    rhs = Polynomial([1] * (n + 1))
    return lhs, rhs


def geometric_matrix_sides(n: int):
    """Matrix form of the geometric sum, with the 1/(1-x) factor cleared.

    ((1-x^(n+1), 1-x^n), (-x(1-x^n), -x(1-x^(n-1))))
        = (1-x) * ((1+x, 1), (-x, 0))^n,

    where the power on the right is assembled via the closed form.
    """
    if n < 1:
        raise ValueError("n must be positive")
    xm = Polynomial.monomial
    lhs = Matrix2(
        1 - xm(n + 1),
        1 - xm(n),
        xm(n + 1) - xm(1),
        xm(n) - xm(1),
    )
    rhs = (1 - X) * mat_pow_closed(Matrix2(1 + X, 1, -X, 0), n)
    return lhs, rhs


def waring_sides(n: int):
    """Waring's two-variable power sum, three ways (s stands in for y).

    direct  = x^n + s^n
    sum     = sum_j (n/(n-j)) C(n-j, j) (x+s)^(n-2j) (-xs)^j
    trace   = trace of ((x,0),(0,s))^n assembled via the closed form
    """
    if n < 1:
        raise ValueError("n must be positive")
    direct = BI_X**n + BI_S**n
    plus = BI_X + BI_S
    neg_prod = -(BI_X * BI_S)
    plus_powers = [BiPolynomial({(0, 0): 1})]
    for _ in range(n):
        plus_powers.append(plus_powers[-1] * plus)
    summed = BiPolynomial()
    neg_prod_pow = BiPolynomial({(0, 0): 1})
    for j in range(n // 2 + 1):
        summed = summed + Fraction(n, n - j) * binomial(n - j, j) * (
            plus_powers[n - 2 * j] * neg_prod_pow
        )
        neg_prod_pow = neg_prod_pow * neg_prod
    traced = mat_pow_closed(Matrix2(BI_X, 0, 0, BI_S), n).trace
    return direct, summed, traced


# ---------------------------------------------------------------------------
# Continued-fraction ratio limit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LimitResult:
    """Convergence record for the ratio y_n / y_{n-1} at a fixed x > 0."""

    x: Fraction
    target: float
    tolerance: float
    n_max: int
    rows: tuple[tuple[int, float, float], ...]  # (n, ratio, |error|)
    converged_at: int | None

    @property
    def converged(self) -> bool:
        return self.converged_at is not None


def cf_limit(x, tolerance: float = 1e-9, n_max: int = 200) -> LimitResult:
    """Ratios of y_n = sum_j C(n-j, j) x^(n-2j) against (x + sqrt(x^2+4))/2.

    The y here is the entry sequence of ((x,1),(1,0)), i.e. the recurrence
    y_{k+1} = x*y_k + y_{k-1} with y_0 = 1, y_1 = x.  Ratios are formed
    exactly and only then converted to floating point; the limit equals
    2/(sqrt(x^2+4) - x).  Returns the rows up to the first n within
    tolerance, or all n_max rows if the tolerance is never met.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    target = (float(x) + math.sqrt(float(x) ** 2 + 4.0)) / 2.0
    rows = []
    converged_at = None
    prev, cur = Fraction(1), x
    for n in range(1, n_max + 1):
        ratio = float(cur / prev)
        error = abs(ratio - target)
        rows.append((n, ratio, error))
        if error <= tolerance:
            converged_at = n
            break
        prev, cur = cur, x * cur + prev
    return LimitResult(x, target, tolerance, n_max, tuple(rows), converged_at)


# ---------------------------------------------------------------------------
# Identity registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityDef:
    """One sweep-able catalog entry.

    ``params`` fixes the nesting (and therefore reporting) order.  A
    parameter with no entry in ``defaults`` must be given an explicit range.
    ``evaluate`` returns the list of (lhs, rhs) comparisons for one case;
    most entries have a single comparison, multi-route ones have several.
    """

    name: str
    params: tuple[str, ...]
    defaults: Mapping[str, Callable[[Mapping[str, int]], Sequence[int]]]
    domain: Callable[..., bool]
    evaluate: Callable[..., list]
    notes: str = ""


def _pairs(*sides):
    reference = sides[-1]
    return [(value, reference) for value in sides[:-1]]


def _fib_functional_pairs(m, n):
    check = fib_functional_eq_check(m, n)
    return [(check.composed, check.direct), (check.summed, check.direct)]


def _tracepoly_pairs(n):
    reference = trace_poly_recurrence(n)
    pairs = [(trace_poly_closed(n), reference)]
    if n >= 2:
        pairs.append((y_poly(n) + X * y_poly(n - 2), reference))
    return pairs


IDENTITIES: dict[str, IdentityDef] = {}


def _register(defn: IdentityDef) -> None:
    IDENTITIES[defn.name] = defn


_register(IdentityDef(
    name="mns",
    params=("m", "n", "s"),
    defaults={"s": lambda a: range((a["m"] * a["n"] - 1) // 2 + 1)},
    domain=lambda m, n, s: m >= 1 and n >= 1 and 0 <= s <= (m * n - 1) // 2,
    evaluate=lambda m, n, s: [mns_sides(m, n, s)],
))

_register(IdentityDef(
    name="trace-sum",
    params=("n", "s"),
    defaults={"s": lambda a: range(a["n"] // 2 + 1)},
    domain=lambda n, s: n >= 1 and 0 <= s <= n // 2,
    evaluate=lambda n, s: [trace_sum_sides(n, s)],
))

_register(IdentityDef(
    name="nmw",
    params=("n", "m", "w"),
    defaults={
        "m": lambda a: range(2 * a["n"] + 1),
        "w": lambda a: range(-a["n"], a["n"] + 1),
    },
    domain=lambda n, m, w: n >= 1 and 0 <= m <= 2 * n and -n <= w <= n,
    evaluate=lambda n, m, w: [nmw_sides(n, m, w)],
))

_register(IdentityDef(
    name="determinant",
    params=("n", "s"),
    defaults={"s": lambda a: range(a["n"])},
    domain=lambda n, s: n >= 1 and 0 <= s <= n - 1,
    evaluate=lambda n, s: [determinant_sides(n, s)],
))

_register(IdentityDef(
    name="pwr2",
    params=("n", "s"),
    defaults={"s": lambda a: range(a["n"])},
    domain=lambda n, s: n >= 1 and 0 <= s <= n - 1,
    evaluate=lambda n, s: _pairs(*pwr2_sides(n, s)),
))

_register(IdentityDef(
    name="cubic3",
    params=("n", "s"),
    defaults={"s": lambda a: range((3 * a["n"] - 1) // 2 + 1)},
    domain=lambda n, s: n >= 1 and 0 <= s <= (3 * n - 1) // 2,
    evaluate=lambda n, s: [cubic3_sides(n, s)],
))

_register(IdentityDef(
    name="cubic3-printed",
    params=("n", "s"),
    defaults={"s": lambda a: range((3 * a["n"] - 1) // 2 + 1)},
    domain=lambda n, s: n >= 1 and 0 <= s <= (3 * n - 1) // 2,
    evaluate=lambda n, s: [cubic3_sides(n, s, printed=True)],
    notes=(
        "As-printed variant with inner binomial upper entry n-2i; reproduces "
        "a known misprint.  Expected minimal counterexample: n=1, s=1 with "
        "lhs=4, rhs=1.  The corrected form (upper entry n-2i-1) is 'cubic3'."
    ),
))

_register(IdentityDef(
    name="cubic3-poly",
    params=("n",),
    defaults={},
    domain=lambda n: n >= 1,
    evaluate=lambda n: [cubic3_poly_sides(n)],
))

_register(IdentityDef(
    name="addition-mn",
    params=("m", "n", "s"),
    defaults={"s": lambda a: range((a["m"] + a["n"]) // 2 + 1)},
    domain=lambda m, n, s: m >= 1 and n >= 1 and 0 <= s <= (m + n) // 2,
    evaluate=lambda m, n, s: [addition_sides(m, n, s)],
))

_register(IdentityDef(
    name="bhatwadekar-roy",
    params=("n",),
    defaults={},
    domain=lambda n: n >= 1,
    evaluate=lambda n: [bhatwadekar_roy_sides(n), geometric_matrix_sides(n)],
    notes="Also checks the matrix form with the 1/(1-x) factor cleared.",
))

_register(IdentityDef(
    name="waring",
    params=("n",),
    defaults={},
    domain=lambda n: n >= 1,
    evaluate=lambda n: _pairs(*reversed(waring_sides(n))),
))

_register(IdentityDef(
    name="fib-functional",
    params=("m", "n"),
    defaults={},
    domain=lambda m, n: m >= 1 and n >= 1,
    evaluate=_fib_functional_pairs,
))

_register(IdentityDef(
    name="tracepoly",
    params=("n",),
    defaults={},
    domain=lambda n: n >= 1,
    evaluate=_tracepoly_pairs,
))

_register(IdentityDef(
    name="tracepoly-printed",
    params=("n",),
    defaults={},
    domain=lambda n: n >= 1,
    evaluate=lambda n: [(trace_poly_closed(n, printed=True), trace_poly_recurrence(n))],
    notes=(
        "As-printed closed form with normalization 1/2^(n+1); fails from n=1 "
        "on (n=2 already gives (1 + 2x)/4 against 1 + 2x).  The consistent "
        "normalization 1/2^(n-1) is verified by 'tracepoly'."
    ),
))

_register(IdentityDef(
    name="trace-power",
    params=("n", "r"),
    defaults={"r": lambda a: range(7)},
    domain=lambda n, r: n >= 1 and r >= 0,
    evaluate=lambda n, r: [(trace_power_expand(n, r), trace_poly(n) ** r)],
    notes=(
        "The power-of-two factor is 2^(1+2s-rn) with s the output exponent; "
        "printed statements of this expansion carry a stray index t there, "
        "and reading it as s is the only version matching the direct power."
    ),
))


# ---------------------------------------------------------------------------
# Sweep engine and report
# ---------------------------------------------------------------------------

@dataclass
class IdentityReport:
    """Aggregated result of sweeping one identity over a parameter grid."""

    identity: str
    grid: dict[str, Any]
    cases_checked: int
    failures: list[dict[str, Any]] = field(default_factory=list)
    elapsed_ms: float = 0.0
    errata_notes: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": REPORT_SCHEMA,
            "identity": self.identity,
            "grid": self.grid,
            "cases_checked": self.cases_checked,
            "failures": self.failures,
            "elapsed_ms": self.elapsed_ms,
            "errata_notes": self.errata_notes,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)

    def canonical_bytes(self) -> bytes:
        """Key-sorted byte form with the (nondeterministic) timing dropped."""
        payload = self.to_dict()
        payload.pop("elapsed_ms")
        return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "IdentityReport":
        if payload.get("schema") != REPORT_SCHEMA:
            raise ValueError(f"unsupported report schema: {payload.get('schema')!r}")
        return cls(
            identity=payload["identity"],
            grid=dict(payload["grid"]),
            cases_checked=payload["cases_checked"],
            failures=list(payload["failures"]),
            elapsed_ms=payload["elapsed_ms"],
            errata_notes=payload.get("errata_notes", ""),
        )


def _json_value(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    return str(value)


def _case_worker(task):
    """Evaluate one case; returns (params, list of unequal (lhs, rhs))."""
    name, params = task
    comparisons = IDENTITIES[name].evaluate(**params)
    mismatches = [
        (_json_value(lhs), _json_value(rhs)) for lhs, rhs in comparisons if lhs != rhs
    ]
    return params, mismatches


def _generate_cases(
    defn: IdentityDef, ranges: Mapping[str, tuple[int, int]]
) -> Iterator[dict[str, int]]:
    def rec(index: int, assignment: dict[str, int]) -> Iterator[dict[str, int]]:
        if index == len(defn.params):
            if defn.domain(**assignment):
                yield dict(assignment)
            return
        param = defn.params[index]
        if param in ranges:
            low, high = ranges[param]
            candidates: Sequence[int] = range(low, high + 1)
        elif param in defn.defaults:
            candidates = defn.defaults[param](assignment)
        else:
            raise ValueError(
                f"identity {defn.name!r} needs an explicit range for {param!r}"
            )
        for value in candidates:
            assignment[param] = value
            yield from rec(index + 1, assignment)
        assignment.pop(param, None)

    return rec(0, {})


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        raw = os.environ.get("IDMAT_THREADS", "").strip()
        if not raw:
            return 1
        try:
            workers = int(raw)
        except ValueError:
            raise ValueError(f"IDMAT_THREADS must be an integer, got {raw!r}") from None
    if workers < 1:
        raise ValueError("worker count must be at least 1")
    return min(workers, os.cpu_count() or 1)


def sweep(
    identity: str,
    ranges: Mapping[str, tuple[int, int]] | None = None,
    workers: int | None = None,
) -> IdentityReport:
    """Evaluate every in-domain case of ``identity`` over the given ranges.

    ``ranges`` maps parameter names to inclusive (low, high) pairs;
    parameters with catalog defaults may be omitted, in which case every
    valid value for the surrounding assignment is used.  Out-of-domain
    combinations inside an explicit range are skipped.  All counterexamples
    are collected (never just the first); the report is ordered by the
    case-generation order, which is ascending in every parameter, so output
    is deterministic no matter how many workers evaluate cases.
    """
    defn = IDENTITIES.get(identity)
    if defn is None:
        known = ", ".join(sorted(IDENTITIES))
        raise ValueError(f"unknown identity {identity!r}; known: {known}")
    ranges = dict(ranges or {})
    for key in ranges:
        if key not in defn.params:
            raise ValueError(f"identity {identity!r} has no parameter {key!r}")
    start = time.perf_counter()
    cases = list(_generate_cases(defn, ranges))
    if not cases:
        raise ValueError(f"empty grid for identity {identity!r}")
    worker_count = _resolve_workers(workers)
    tasks = [(identity, params) for params in cases]
    if worker_count > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=worker_count) as pool:
            chunk = max(1, len(tasks) // (worker_count * 4))
            results = list(pool.map(_case_worker, tasks, chunksize=chunk))
    else:
        results = [_case_worker(task) for task in tasks]
    failures = [
        {"params": params, "lhs": lhs, "rhs": rhs}
        for params, mismatches in results
        for lhs, rhs in mismatches
    ]
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    grid = {
        param: list(ranges[param]) if param in ranges else "auto"
        for param in defn.params
    }
    return IdentityReport(
        identity=identity,
        grid=grid,
        cases_checked=len(cases),
        failures=failures,
        elapsed_ms=elapsed_ms,
        errata_notes=defn.notes,
    )
