"""Lattice series over partitions and their truncation/decomposition algebra.

The central objects:

* ``f(lam, z, k)`` - one quarter of the sum of w**(-k) over the four-fold
  lattice of a single partition.
* ``g(n, z, k)`` - the sum of f over all partitions of n.
* ``gen_coeffs`` - the coefficient vector of the generating function
  sum_n g(n, z, k) q**n, truncated.
* ``truncated_classical`` - the square-truncated double sum over all integer
  pairs, which splits exactly into a square-partition f term plus an axis
  term (``remark_decompose``).
* ``classical_G_qexp`` - float-only divisor-sum q-expansion of the classical
  weight-k2 series, used as an independent comparison value.

Everything is backend-polymorphic: pass a RationalComplex z for exact
arithmetic or a complex z for floats. Repeated row sums are memoized per
(z, k), which is what makes the exhaustive verification grids cheap.
"""

from __future__ import annotations

import json
import math
import threading
from cmath import exp as cexp
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .numerics import (
    DomainError,
    RationalComplex,
    fraction_to_text,
    int_pow,
    is_exact,
    require_nonreal,
    _float_text,
    _is_decimal_token,
)
from .partitions import Partition, enumerate_partitions, partition_count, rectangle, sigma

# float rows at least this long bypass the cache and go through numpy
_ROW_VECTOR_MIN = 64
# exact rows longer than this are summed directly instead of being memoized
_ROW_CACHE_MAX = 4096


def _zero_like(z):
    return z * 0


def _four_term_sum(a: int, b: int, z, k: int):
    w = a * z
    return (
        int_pow(w + b, -k)
        + int_pow(w - b, -k)
        + int_pow(-w - b, -k)
        + int_pow(-w + b, -k)
    )


class _RowSumCache:
    """Prefix sums of the four-quadrant summands, keyed by (z, k) and row index.

    Entry (z, k, b, m) is sum over a = 1..m of the four summands; rows fill
    incrementally in ascending a, so a cached value is bit-identical to the
    value a fresh serial computation would produce.
    """

    def __init__(self, max_tables: int = 512):
        self._tables: OrderedDict = OrderedDict()
        self._max_tables = max_tables
        self._lock = threading.Lock()

    def clear(self):
        with self._lock:
            self._tables.clear()

    def row_sum(self, z, k: int, b: int, m: int):
        key = (z, k)
        with self._lock:
            table = self._tables.get(key)
            if table is None:
                table = {}
                self._tables[key] = table
                if len(self._tables) > self._max_tables:
                    self._tables.popitem(last=False)
            prefix = table.get(b)
            if prefix is None:
                prefix = [_zero_like(z)]
                table[b] = prefix
            while len(prefix) <= m:
                a = len(prefix)
                prefix.append(prefix[-1] + _four_term_sum(a, b, z, k))
            return prefix[m]


_row_cache = _RowSumCache()


def _row_sum_vector(z: complex, k: int, b: int, m: int) -> complex:
    a = np.arange(1, m + 1, dtype=np.float64)
    w = a * z
    e = -k
    terms = (w + b) ** e + (w - b) ** e + (-w - b) ** e + (-w + b) ** e
    return complex(np.sum(terms))


def _row_sum(z, k: int, b: int, m: int):
    if is_exact(z):
        if m > _ROW_CACHE_MAX:
            total = _zero_like(z)
            for a in range(1, m + 1):
                total = total + _four_term_sum(a, b, z, k)
            return total
        return _row_cache.row_sum(z, k, b, m)
    zc = complex(z)
    if m >= _ROW_VECTOR_MIN:
        return _row_sum_vector(zc, k, b, m)
    return _row_cache.row_sum(zc, k, b, m)


def f(lam: Partition, z, k: int):
    """Quarter sum of (a*z+b)**(-k) over the four-fold lattice of lam.

    Zero for the empty partition; equal to size(lam) at k = 0.
    """
    require_nonreal(z)
    if not lam.parts:
        return _zero_like(z)
    total = _zero_like(z)
    for b, row_len in enumerate(lam.parts, start=1):
        total = total + _row_sum(z, k, b, row_len)
    return total / 4


def quadrant_sums(lam: Partition, z, k: int) -> tuple:
    """The four per-quadrant partial series (each carries the 1/4 factor).

    Computed directly from the sign patterns (az+b), (az-b), (-az-b), (-az+b)
    with a, b ranging positive, independently of the memoized path used by f.
    """
    require_nonreal(z)
    sums = []
    for signs in ((1, 1), (1, -1), (-1, -1), (-1, 1)):
        sign_a, sign_b = signs
        total = _zero_like(z)
        for b, row_len in enumerate(lam.parts, start=1):
            for a in range(1, row_len + 1):
                total = total + int_pow(sign_a * a * z + sign_b * b, -k)
        sums.append(total / 4)
    return tuple(sums)


def f_via_quadrants(lam: Partition, z, k: int):
    """f recomputed as the sum of the four quadrant series."""
    q1, q2, q3, q4 = quadrant_sums(lam, z, k)
    return q1 + q2 + q3 + q4


def g(n: int, z, k: int):
    """Sum of f over every partition of n; zero at n = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    require_nonreal(z)
    total = _zero_like(z)
    for lam in enumerate_partitions(n):
        total = total + f(lam, z, k)
    return total


def gen_coeffs(k: int, z, n_max: int) -> "QSeries":
    """Truncated generating function: coefficient n is g(n, z, k), c_0 = 0."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    require_nonreal(z)
    coeffs = [_zero_like(z)]
    for n in range(1, n_max + 1):
        coeffs.append(g(n, z, k))
    return QSeries(coeffs)


def _require_even_positive(k2: int):
    if not isinstance(k2, int) or k2 < 2 or k2 % 2:
        raise DomainError(f"weight must be a positive even integer, got {k2!r}")


def truncated_classical(k2: int, z, trunc: int):
    """Square-truncated double sum of (a*z+b)**(-k2) over |a|,|b| <= trunc.

    The (0,0) term is excluded. Direct enumeration; does not reuse the
    partition-series path, so it can serve as the left side of the
    decomposition identity.
    """
    _require_even_positive(k2)
    require_nonreal(z)
    if trunc < 1:
        raise ValueError("truncation bound must be positive")
    if not is_exact(z):
        zc = complex(z)
        total = 0.0 + 0.0j
        e = -k2
        for a in range(-trunc, trunc + 1):
            if a == 0:
                b = np.concatenate(
                    [np.arange(-trunc, 0), np.arange(1, trunc + 1)]
                ).astype(np.float64)
            else:
                b = np.arange(-trunc, trunc + 1, dtype=np.float64)
            total += complex(np.sum((a * zc + b) ** e))
        return total
    total = _zero_like(z)
    for a in range(-trunc, trunc + 1):
        for b in range(-trunc, trunc + 1):
            if a == 0 and b == 0:
                continue
            total = total + int_pow(a * z + b, -k2)
    return total


def axis_sum(k2: int, z, trunc: int):
    """Sum of w**(-k2) over the axis points (exactly one of a, b zero).

    Enumerated directly; together with 4*f(rectangle(trunc)) it rebuilds the
    square-truncated classical sum.
    """
    _require_even_positive(k2)
    require_nonreal(z)
    if trunc < 1:
        raise ValueError("truncation bound must be positive")
    total = _zero_like(z)
    for m in range(1, trunc + 1):
        real_pt = _zero_like(z) + m
        z_pt = m * z
        total = (
            total
            + int_pow(real_pt, -k2)
            + int_pow(-real_pt, -k2)
            + int_pow(z_pt, -k2)
            + int_pow(-z_pt, -k2)
        )
    return total


def zeta_partial(k2: int, trunc: int) -> Fraction:
    """Exact partial sum of m**(-k2) for m = 1..trunc."""
    _require_even_positive(k2)
    if trunc < 1:
        raise ValueError("truncation bound must be positive")
    return sum(Fraction(1, m ** k2) for m in range(1, trunc + 1))


def axis_closed_form(k2: int, z, trunc: int):
    """(2 + 2*z**(-k2)) times the partial zeta sum; equals axis_sum identically."""
    partial = zeta_partial(k2, trunc)
    factor = 2 + 2 * int_pow(z, -k2)
    if is_exact(z):
        return factor * RationalComplex(partial)
    return factor * float(partial)


def axis_printed_form(k2: int, z, trunc: int):
    """(2 + z**k2 + z**(-k2)) times the partial zeta sum.

    An alternative symmetric factor that is evaluated for comparison in the
    verification report; it agrees with the enumerated axis sum only when
    z**(2*k2) = 1.
    """
    partial = zeta_partial(k2, trunc)
    factor = 2 + int_pow(z, k2) + int_pow(z, -k2)
    if is_exact(z):
        return factor * RationalComplex(partial)
    return factor * float(partial)


@dataclass(frozen=True)
class RemarkDecomposition:
    """Square-truncated sum split into square-partition and axis contributions."""

    lhs: object
    rect_term: object
    axis_term: object
    residual: object


def remark_decompose(k2: int, z, trunc: int) -> RemarkDecomposition:
    """truncated_classical = 4*f(rectangle(trunc)) + axis_sum, with residual.

    The residual is exactly zero on the rational backend.
    """
    lhs = truncated_classical(k2, z, trunc)
    rect_term = 4 * f(rectangle(trunc), z, k2)
    axis_term = axis_sum(k2, z, trunc)
    return RemarkDecomposition(lhs, rect_term, axis_term, lhs - rect_term - axis_term)


# ---------------------------------------------------------------------------
# classical comparison value


_bernoulli_cache = [Fraction(1), Fraction(-1, 2)]
_bernoulli_lock = threading.Lock()


def _bernoulli(m: int) -> Fraction:
    if m < len(_bernoulli_cache):
        return _bernoulli_cache[m]
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= m:
            j = len(_bernoulli_cache)
            acc = Fraction(0)
            for i in range(j):
                acc += math.comb(j + 1, i) * _bernoulli_cache[i]
            _bernoulli_cache.append(-acc / (j + 1))
    return _bernoulli_cache[m]


def zeta_even(k2: int) -> float:
    """zeta(k2) for even k2 >= 2, via the Bernoulli-number closed form."""
    _require_even_positive(k2)
    half = k2 // 2
    rational_part = Fraction((-1) ** (half + 1)) * _bernoulli(k2) / (2 * math.factorial(k2))
    return float(rational_part) * (2 * math.pi) ** k2


class ClassicalValue(NamedTuple):
    """Truncated q-expansion value with its tail bound and term count."""

    value: complex
    tail_bound: float
    terms: int


def _qexp_tail_bound(coeff_abs: float, k2: int, q_abs: float, terms: int) -> float:
    # crude divisor bound sigma_{k2-1}(n) <= n**k2, then a ratio-test tail
    first = coeff_abs * float(terms + 1) ** k2 * q_abs ** (terms + 1)
    ratio = q_abs * ((terms + 2) / (terms + 1)) ** k2
    if ratio >= 1.0:
        return math.inf
    return first / (1.0 - ratio)


def classical_G_qexp(k2: int, tau, terms: int | None = None) -> ClassicalValue:
    """Weight-k2 classical series at tau via its divisor-sum q-expansion.

    Float-only: value = 2*zeta(k2) + (2*(2*pi*i)**k2/(k2-1)!) * sum of
    sigma_{k2-1}(n) q**n, q = exp(2*pi*i*tau). When `terms` is omitted the
    truncation point is chosen so the reported tail bound is below 1e-12.
    """
    if not isinstance(k2, int) or k2 < 4 or k2 % 2:
        raise DomainError(f"weight must be an even integer >= 4, got {k2!r}")
    tau_c = complex(tau)
    if not tau_c.imag > 0:
        raise DomainError("tau must lie in the upper half-plane")
    q = cexp(2j * math.pi * tau_c)
    q_abs = abs(q)
    coeff = 2 * (2j * math.pi) ** k2 / math.factorial(k2 - 1)
    coeff_abs = abs(coeff)
    if terms is None:
        terms = 1
        while _qexp_tail_bound(coeff_abs, k2, q_abs, terms) > 1e-12:
            terms += 1
            if terms > 100_000:
                raise DomainError(
                    "cannot reach the default tail target; pass terms explicitly"
                )
    elif terms < 1:
        raise ValueError("terms must be positive")
    series = 0.0 + 0.0j
    q_pow = 1.0 + 0.0j
    for n in range(1, terms + 1):
        q_pow *= q
        series += sigma(k2 - 1, n) * q_pow
    value = 2 * zeta_even(k2) + coeff * series
    return ClassicalValue(value, _qexp_tail_bound(coeff_abs, k2, q_abs, terms), terms)


# ---------------------------------------------------------------------------
# q-series


class QSeries:
    """Truncated power series in q: an immutable coefficient tuple c_0..c_N.

    Addition and Cauchy multiplication truncate at the smaller order of the
    two operands. Coefficients may be exact integers, RationalComplex, or
    complex, matching whichever backend produced them.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int):
        return self.coeffs[n]

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return len(self.coeffs) == len(other.coeffs) and all(
                a == b for a, b in zip(self.coeffs, other.coeffs)
            )
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        shown = ", ".join(repr(c) for c in self.coeffs[:4])
        tail = ", ..." if len(self.coeffs) > 4 else ""
        return f"QSeries([{shown}{tail}], order={self.order})"

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(len(self.coeffs), len(other.coeffs))
        return QSeries(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(len(self.coeffs), len(other.coeffs))
        return QSeries(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    def __neg__(self):
        return QSeries(-c for c in self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(len(self.coeffs), len(other.coeffs))
        out = []
        for m in range(n):
            acc = self.coeffs[0] * other.coeffs[m]
            for j in range(1, m + 1):
                acc = acc + self.coeffs[j] * other.coeffs[m - j]
            out.append(acc)
        return QSeries(out)

    def evaluate(self, q):
        """Plain polynomial evaluation of the truncation (Horner)."""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * q + c
        return acc

    # -- serialization ------------------------------------------------------

    def _style(self) -> str:
        for c in self.coeffs:
            if isinstance(c, (float, complex)):
                return "float"
        return "rational"

    def to_rows(self, style: str | None = None) -> list[dict]:
        """Rows {n, re, im}; rational style uses "p/q" strings, float numbers."""
        style = style or self._style()
        rows = []
        for n, c in enumerate(self.coeffs):
            if style == "rational":
                rc = c if isinstance(c, RationalComplex) else RationalComplex(c)
                rows.append(
                    {"n": n, "re": fraction_to_text(rc.re), "im": fraction_to_text(rc.im)}
                )
            elif style == "float":
                cc = complex(c)
                rows.append({"n": n, "re": cc.real, "im": cc.imag})
            else:
                raise ValueError(f"unknown serialization style {style!r}")
        return rows

    def to_json(self, style: str | None = None) -> str:
        return json.dumps(self.to_rows(style), indent=2) + "\n"

    def to_csv(self, style: str | None = None) -> str:
        style = style or self._style()
        lines = ["n,re,im"]
        for row in self.to_rows(style):
            if style == "rational":
                lines.append(f"{row['n']},{row['re']},{row['im']}")
            else:
                lines.append(f"{row['n']},{_float_text(row['re'])},{_float_text(row['im'])}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def _coeff_from_texts(re_tok: str, im_tok: str):
        if "/" in re_tok or "/" in im_tok:
            return RationalComplex(Fraction(re_tok), Fraction(im_tok))
        return complex(float(re_tok), float(im_tok))

    @classmethod
    def from_rows(cls, rows) -> "QSeries":
        coeffs = [None] * len(rows)
        for row in rows:
            n = int(row["n"])
            re_v, im_v = row["re"], row["im"]
            if isinstance(re_v, str) or isinstance(im_v, str):
                coeffs[n] = RationalComplex(Fraction(re_v), Fraction(im_v))
            else:
                coeffs[n] = complex(float(re_v), float(im_v))
        if any(c is None for c in coeffs):
            raise ValueError("rows do not cover a contiguous 0..N index range")
        return cls(coeffs)

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        return cls.from_rows(json.loads(text))

    @classmethod
    def from_csv(cls, text: str) -> "QSeries":
        lines = [ln for ln in text.strip().splitlines() if ln]
        if not lines or lines[0] != "n,re,im":
            raise ValueError("csv must start with the header 'n,re,im'")
        rows = []
        for ln in lines[1:]:
            n_tok, re_tok, im_tok = ln.split(",")
            if "/" in re_tok or "/" in im_tok:
                rows.append({"n": int(n_tok), "re": re_tok, "im": im_tok})
            else:
                rows.append({"n": int(n_tok), "re": float(re_tok), "im": float(im_tok)})
        return cls.from_rows(rows)


def euler_product_coeffs(n_max: int) -> QSeries:
    """Coefficients of prod_{m>=1} (1 - q**m) up to q**n_max, exact integers.

    By the pentagonal number theorem the nonzero coefficients are (-1)**j at
    the generalized pentagonal indices j*(3j -/+ 1)/2.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    coeffs = [0] * (n_max + 1)
    coeffs[0] = 1
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        if g1 > n_max and g2 > n_max:
            break
        sign = -1 if j % 2 else 1
        if g1 <= n_max:
            coeffs[g1] = sign
        if g2 <= n_max:
            coeffs[g2] = sign
        j += 1
    return QSeries(coeffs)


def q_bracket_coeffs(k: int, z, n_max: int) -> QSeries:
    """Cauchy product of the Euler product with gen_coeffs(k, z, n_max)."""
    return euler_product_coeffs(n_max) * gen_coeffs(k, z, n_max)


def gen0_divisor_identity(n_max: int) -> QSeries:
    """Residuals sum_{j<=n} sigma_1(j) p(n-j) - n*p(n); all exactly zero.

    Exact integer arithmetic throughout; returned as a series so callers can
    inspect individual residuals.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    out = [0]
    for n in range(1, n_max + 1):
        conv = sum(sigma(1, j) * partition_count(n - j) for j in range(1, n + 1))
        out.append(conv - n * partition_count(n))
    return QSeries(out)
