"""Partition-indexed lattice series with exact and float verification."""

from .eisenstein import (
    ClassicalValue,
    QSeries,
    RemarkDecomposition,
    axis_closed_form,
    axis_printed_form,
    axis_sum,
    classical_G_qexp,
    euler_product_coeffs,
    f,
    f_via_quadrants,
    g,
    gen0_divisor_identity,
    gen_coeffs,
    q_bracket_coeffs,
    quadrant_sums,
    remark_decompose,
    truncated_classical,
    zeta_even,
    zeta_partial,
)
from .lattice import CoeffPair, coeff_pairs, min_modulus_squared, point, quadrant_pairs, render_svg
from .numerics import (
    DomainError,
    RationalComplex,
    ToleranceSpec,
    format_scalar,
    format_scalar_display,
    int_pow,
    is_nonreal,
    neg_inverse,
    parse_scalar,
)
from .partitions import (
    Partition,
    enumerate_partitions,
    partition_count,
    rectangle,
    sigma,
)

__version__ = "0.1.0"
