"""Exact-arithmetic verification of combinatorial identities.

Everything rests on one closed form: the n-th power of a 2x2 matrix can be
assembled from a scalar sequence y_n of binomial sums in the trace and
determinant.  Comparing that assembly against literal repeated
multiplication, and comparing powers of powers against each other, yields
a family of binomial, polynomial and arithmetic-function identities, all of
which this package evaluates exactly and sweeps for counterexamples.
"""
from .rings import (
    BI_S,
    BI_X,
    BiPolynomial,
    Polynomial,
    X,
    as_integer,
    binomial,
    kronecker_delta,
    scalar_pow,
)
from .matpow import Matrix2, YSequence, mat_pow_closed, mat_pow_oracle, y_closed_form
from .fibpoly import (
    FibFunctionalCheck,
    central_poly,
    fib_explicit,
    fib_functional_eq_check,
    fib_matrix,
    fib_recurrence,
    trace_poly,
    trace_poly_closed,
    trace_poly_recurrence,
    trace_power_expand,
    y_poly,
    y_super,
)
from .identities import (
    IDENTITIES,
    IdentityDef,
    IdentityReport,
    LimitResult,
    cf_limit,
    sweep,
)
from .specmul import (
    MissingPrimeError,
    QSeries,
    SpecMulSpec,
    busche_ramanujan_sides,
    f_a_at,
    tau_qseries,
    tau_spec,
    value_at,
    value_pp_closed,
    value_pp_matrix,
    value_pp_recurrence,
)

__version__ = "0.1.0"
