"""Exact machine verification of the motivated proof of Gordon's identities.

The product sides ``G_1 .. G_k`` (modulus ``2k+1``) are expanded as truncated
power series, the sequence ``G_s`` is generated by repeated subtraction and
division by powers of ``q``, and every step is cross-checked against closed
forms, polynomial matrix identities and brute-force partition enumeration.
"""

from .engine import (
    EmpiricalCheckResult,
    GordonIndex,
    GordonSequence,
    closed_form_H,
    empirical_hypothesis_check,
    generate_sequence,
    gordon_sequence,
    h_equality_check,
    precision_loss,
    product_G,
    seed_order,
    sum_form_G,
    theta_numerator,
    triple_product_check,
)
from .errors import (
    InsufficientPrecision,
    NegativeExponentResidue,
    NonUnitConstantTerm,
    NotDivisible,
    ParamOutOfRange,
    PrecisionError,
    PrecisionExhausted,
    QSeriesError,
)
from .matrices import (
    SeriesMatrix,
    a_matrix,
    b_matrix,
    expand_G,
    h_matrix,
    matrix_apply,
    matrix_mul,
    step_check,
    verify_inverse,
)
from .partitions import (
    GordonConstraint,
    Partition,
    enumerate_partitions,
    gf_gordon,
    gf_h_entry,
    gf_tail,
    multiplicity_split_check,
    satisfies_gordon,
    uniqueness_check,
)
from .report import CheckReport, Mismatch
from .series import (
    LaurentPolynomial,
    TruncatedSeries,
    euler_product,
    order_of,
    restricted_euler_product,
    series_add,
    series_invert,
    series_mul,
    series_sub,
    shift_divide,
)

__version__ = "0.1.0"
