"""Acceptance suite: one test per release criterion, at full stated scale.

Each test prints a ``[acceptance] NN <name>: PASS/FAIL`` line (visible with
``pytest -s``); the assertions themselves carry the exact tolerances, which
for everything except the ratio limit means exact equality.  The two
"printed" catalog entries are required to FAIL with their documented
counterexamples; a run in which they pass is itself a defect.
"""
from __future__ import annotations

import functools
import random
import time
from fractions import Fraction

from idmat.fibpoly import (
    fib_functional_eq_check,
    trace_poly_closed,
    trace_poly_recurrence,
)
from idmat.identities import (
    addition_sides,
    bhatwadekar_roy_sides,
    cf_limit,
    cubic3_poly_sides,
    cubic3_sides,
    determinant_sides,
    geometric_matrix_sides,
    mns_sides,
    nmw_sides,
    pwr2_sides,
    sweep,
    trace_sum_sides,
    waring_sides,
)
from idmat.matpow import Matrix2, mat_pow_closed, mat_pow_oracle
from idmat.rings import Polynomial
from idmat.specmul import (
    SpecMulSpec,
    busche_ramanujan_sides,
    is_prime,
    tau_qseries,
    tau_spec,
    value_pp_closed,
    value_pp_matrix,
    value_pp_recurrence,
)


def criterion(number: int, label: str):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"[acceptance] {number:02d} {label}: FAIL")
                raise
            print(f"[acceptance] {number:02d} {label}: PASS")

        return wrapper

    return decorate


def _as_int(value) -> int:
    assert isinstance(value, int) or value.denominator == 1, value
    return int(value)


@criterion(1, "closed-form power equals the repeated-multiplication oracle")
def test_criterion_01_closed_form_equivalence():
    rng = random.Random(0xA5)
    start = time.perf_counter()
    for _ in range(1000):
        matrix = Matrix2(*(rng.randint(-9, 9) for _ in range(4)))
        n = rng.randint(1, 64)
        assert mat_pow_closed(matrix, n) == mat_pow_oracle(matrix, n), (matrix, n)
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"took {elapsed:.1f}s, budget 10s"


@criterion(2, "four-index identity over m, n in [1, 8], every valid s")
def test_criterion_02_mns_grid():
    start = time.perf_counter()
    cases = 0
    for m in range(1, 9):
        for n in range(1, 9):
            for s in range((m * n - 1) // 2 + 1):
                lhs, rhs = mns_sides(m, n, s)
                assert lhs == rhs, (m, n, s, lhs, rhs)
                _as_int(lhs)
                _as_int(rhs)
                cases += 1
    elapsed = time.perf_counter() - start
    assert cases == 656
    assert elapsed < 60.0, f"took {elapsed:.1f}s, budget 60s"


@criterion(3, "trace coefficient sum for n in [1, 200], all s")
def test_criterion_03_trace_sum():
    for n in range(1, 201):
        for s in range(n // 2 + 1):
            lhs, rhs = trace_sum_sides(n, s)
            assert lhs == rhs, (n, s)
            _as_int(lhs)


@criterion(4, "three-binomial identity for n in [1, 8], all m and w")
def test_criterion_04_nmw():
    for n in range(1, 9):
        for m in range(2 * n + 1):
            for w in range(-n, n + 1):
                lhs, rhs = nmw_sides(n, m, w)
                assert lhs == rhs, (n, m, w)


@criterion(5, "determinant / pwr2 / addition / corrected cubic suite")
def test_criterion_05_section_six_suite():
    for n in range(1, 61):
        for s in range(n):
            lhs, rhs = determinant_sides(n, s)
            assert lhs == rhs, ("determinant", n, s)
            e1, e2, e3 = pwr2_sides(n, s)
            assert e1 == e3 and e2 == e3, ("pwr2", n, s)
            _as_int(e2)
    for m in range(1, 31):
        for n in range(1, 31):
            for s in range((m + n) // 2 + 1):
                lhs, rhs = addition_sides(m, n, s)
                assert lhs == rhs, ("addition", m, n, s)
    for n in range(1, 41):
        for s in range((3 * n - 1) // 2 + 1):
            lhs, rhs = cubic3_sides(n, s)
            assert lhs == rhs, ("cubic3", n, s)
            _as_int(lhs)


@criterion(6, "errata reproduced: printed variants fail exactly as documented")
def test_criterion_06_errata_reproduction():
    # the as-printed cubic identity must fail, minimally at (n, s) = (1, 1)
    report = sweep("cubic3-printed", {"n": (1, 4)})
    assert not report.passed, "the printed variant must NOT verify"
    first = report.failures[0]
    assert first["params"] == {"n": 1, "s": 1}
    assert (first["lhs"], first["rhs"]) == (4, 1)
    ordered = [(f["params"]["n"], f["params"]["s"]) for f in report.failures]
    assert min(ordered) == (1, 1), "minimal counterexample must be (1, 1)"
    assert report.errata_notes
    # cubic3-sides agrees pointwise with the documented values
    assert cubic3_sides(1, 1, printed=True) == (4, 1)
    # the printed 1/2^(n+1) trace normalization fails at n = 2 ...
    printed = trace_poly_closed(2, printed=True)
    assert printed == Polynomial((Fraction(1, 4), Fraction(1, 2)))  # (1 + 2x)/4
    assert printed != trace_poly_recurrence(2)
    # ... while the corrected 1/2^(n-1) form passes for n in [1, 64]
    for n in range(1, 65):
        assert trace_poly_closed(n) == trace_poly_recurrence(n), n
    printed_report = sweep("tracepoly-printed", {"n": (1, 8)})
    assert not printed_report.passed
    assert printed_report.errata_notes


@criterion(7, "functional equation, cube-comparison polynomial, geometric matrix")
def test_criterion_07_functional_and_polynomial_identities():
    for m in range(1, 11):
        for n in range(1, 11):
            assert fib_functional_eq_check(m, n).passed, (m, n)
    for n in range(1, 41):
        lhs, rhs = cubic3_poly_sides(n)
        assert lhs == rhs, ("cubic3-poly", n)
        mat_lhs, mat_rhs = geometric_matrix_sides(n)
        assert mat_lhs == mat_rhs, ("geometric", n)


@criterion(8, "Bhatwadekar-Roy for n <= 50 and Waring for n <= 30")
def test_criterion_08_bhatwadekar_and_waring():
    for n in range(1, 51):
        lhs, rhs = bhatwadekar_roy_sides(n)
        assert lhs == rhs == Polynomial([1] * (n + 1)), n
    for n in range(1, 31):
        direct, summed, traced = waring_sides(n)
        assert summed == direct and traced == direct, n


@criterion(9, "arithmetic functions: three routes, convolution, tau oracle")
def test_criterion_09_specially_multiplicative():
    # three-route agreement on 100 random specs, k <= 30
    rng = random.Random(0x5EED)
    primes = (2, 3, 5, 7, 11)
    for _ in range(100):
        spec = SpecMulSpec(
            {p: (rng.randint(-20, 20), rng.randint(-20, 20)) for p in primes}
        )
        for p in primes:
            for k in range(31):
                reference = value_pp_recurrence(spec, p, k)
                assert value_pp_closed(spec, p, k) == reference, (p, k)
                if k >= 3:
                    assert value_pp_matrix(spec, p, k) == reference, (p, k)

    # Busche-Ramanujan convolution for all m, n in [1, 200]
    support = [p for p in range(2, 200) if is_prime(p)]
    conv_spec = SpecMulSpec(
        {p: (rng.randint(-20, 20), rng.randint(-20, 20)) for p in support}
    )
    for m in range(1, 201):
        for n in range(1, 201):
            lhs, rhs = busche_ramanujan_sides(conv_spec, m, n)
            assert lhs == rhs, (m, n)

    # tau cross-check against the q-series oracle
    start = time.perf_counter()
    series = tau_qseries(5000)
    build_time = time.perf_counter() - start
    assert build_time < 60.0, f"oracle build took {build_time:.1f}s, budget 60s"
    assert series[2] == -24
    tau = tau_spec(series, (2, 3, 5, 7))
    for p in (2, 3, 5, 7):
        k = 1
        while p**k <= 4096:
            assert value_pp_recurrence(tau, p, k) == series[p**k], (p, k)
            k += 1


@criterion(10, "ratio limit within 1e-9 of (x + sqrt(x^2+4))/2 by n = 200")
def test_criterion_10_ratio_limit():
    for x in (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5)):
        result = cf_limit(x, tolerance=1e-9, n_max=200)
        assert result.converged, x
        assert result.converged_at <= 200
        final_ratio = result.rows[-1][1]
        assert abs(final_ratio - result.target) <= 1e-9, x
