"""Complex scalars with two interchangeable backends.

The rational backend (`RationalComplex`) stores real and imaginary parts as
arbitrary-precision `fractions.Fraction` values, so field arithmetic and
integer powers are exact and algebraic identities can be checked bit-exactly.
The float backend is the built-in `complex`. Code in the rest of the package
is written against the shared operator surface, so either type flows through
unchanged; the backend of a computation is simply the type of its z input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class DomainError(ValueError):
    """A mathematically invalid input: real z, zero divisor, bad weight range."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(
        f"exact parts must be int, Fraction or string, not {type(value).__name__}"
    )


class RationalComplex:
    """Exact complex number with Fraction real and imaginary parts.

    Instances are immutable and hashable. Arithmetic mixes freely with int
    and Fraction; mixing with float/complex is refused rather than silently
    losing exactness.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    def _coerce(self, other):
        if isinstance(other, RationalComplex):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalComplex(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalComplex":
        d = self.re * self.re + self.im * self.im
        if d == 0:
            raise DomainError("division by zero rational-complex value")
        return RationalComplex(self.re / d, -self.im / d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.reciprocal()
            exponent = -exponent
        result = RationalComplex(1)
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __neg__(self):
        return RationalComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        # matches hash(int)/hash(Fraction) whenever the value is real
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def abs_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"RationalComplex({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


@dataclass(frozen=True)
class ToleranceSpec:
    """Approximate-equality policy for float-backend comparisons."""

    relative_tol: float = 1e-10
    absolute_floor: float = 1e-14

    def __post_init__(self):
        if self.relative_tol < 0 or self.absolute_floor < 0:
            raise ValueError("tolerances must be nonnegative")

    def approx_eq(self, a, b) -> bool:
        ca, cb = complex(a), complex(b)
        bound = max(self.relative_tol * max(abs(ca), abs(cb)), self.absolute_floor)
        return abs(ca - cb) <= bound


def is_exact(s) -> bool:
    """True for scalars carried by the exact rational backend."""
    return isinstance(s, (RationalComplex, int, Fraction))


def int_pow(s, k: int):
    """s**k by binary exponentiation; negative k inverts first.

    Zero base with negative exponent is a domain error on either backend.
    """
    if isinstance(s, RationalComplex):
        return s ** k
    if isinstance(s, (int, Fraction)):
        if k < 0 and s == 0:
            raise DomainError("zero base with negative exponent")
        return Fraction(s) ** k
    base = complex(s)
    if k < 0:
        if base == 0:
            raise DomainError("zero base with negative exponent")
        base = 1.0 / base
        k = -k
    result = 1.0 + 0.0j
    while k:
        if k & 1:
            result *= base
        k >>= 1
        if k:
            base *= base
    return result


def neg_inverse(s):
    """-1/s, the inversion map; exact on the rational backend."""
    if isinstance(s, RationalComplex):
        return -s.reciprocal()
    c = complex(s)
    if c == 0:
        raise DomainError("cannot invert zero")
    return -1.0 / c


def is_nonreal(s, floor: float = 1e-9) -> bool:
    """Domain guard for z: exact on the rational backend, |Im| > floor on floats."""
    if isinstance(s, RationalComplex):
        return s.im != 0
    if isinstance(s, (int, Fraction)):
        return False
    return abs(complex(s).imag) > floor


def require_nonreal(z, floor: float = 1e-9):
    if not is_nonreal(z, floor):
        raise DomainError(f"z must be nonreal (got {z!r})")
    return z


def abs_squared(s):
    """|s|^2; a Fraction on the rational backend, a float otherwise."""
    if isinstance(s, RationalComplex):
        return s.abs_squared()
    if isinstance(s, (int, Fraction)):
        return Fraction(s) ** 2
    c = complex(s)
    return c.real * c.real + c.imag * c.imag


def residual_metric(lhs, rhs) -> float:
    """|lhs - rhs| / max(|lhs|, |rhs|, 1), with an exact-equality short circuit."""
    if is_exact(lhs) and is_exact(rhs) and lhs == rhs:
        return 0.0
    cl, cr = complex(lhs), complex(rhs)
    return abs(cl - cr) / max(abs(cl), abs(cr), 1.0)


# ---------------------------------------------------------------------------
# text forms


def fraction_to_text(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def _float_text(v: float) -> str:
    return f"{v + 0.0:.17g}"


def format_scalar(s) -> str:
    """Canonical text form: "a/b+c/di" (rational) or "x+yi" (float, 17 digits)."""
    if isinstance(s, (int, Fraction)):
        s = RationalComplex(s)
    if isinstance(s, RationalComplex):
        return f"{fraction_to_text(s.re)}+{fraction_to_text(s.im)}i"
    c = complex(s)
    return f"{_float_text(c.real)}+{_float_text(c.imag)}i"


def format_scalar_display(s) -> str:
    """Human-facing form: drops an exactly-zero imaginary part and /1 denominators."""
    if isinstance(s, (int, Fraction)):
        s = RationalComplex(s)
    if isinstance(s, RationalComplex):
        if s.im == 0:
            fr = s.re
            return str(fr.numerator) if fr.denominator == 1 else fraction_to_text(fr)
        return format_scalar(s)
    c = complex(s)
    if c.imag == 0.0:
        return _float_text(c.real)
    return format_scalar(c)


def _split_complex_text(text: str) -> tuple[str, str]:
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar text")
    if not s.endswith(("i", "I")):
        return s, "0"
    body = s[:-1]
    # a sign is a separator unless it opens the string or follows e/E or another sign
    seps = [j for j in range(1, len(body)) if body[j] in "+-" and body[j - 1] not in "eE+-"]
    if len(seps) > 1:
        raise ValueError(f"cannot parse scalar text {text!r}")
    if not seps:
        imag = body
        if imag in ("", "+"):
            imag = "1"
        elif imag == "-":
            imag = "-1"
        return "0", imag
    j = seps[0]
    imag = body[j:]
    if imag.startswith("+"):
        imag = imag[1:]
    if imag in ("", "-"):
        imag += "1"
    return body[:j], imag


def _is_decimal_token(tok: str) -> bool:
    return any(ch in tok for ch in ".eE")


def parse_scalar(text: str, backend: str = "rational"):
    """Parse "a/b+c/di" or "x+yi" into the requested backend.

    Exact-looking input (integers, fractions) converts to either backend;
    decimal input is rejected for the rational backend because the intended
    exact value cannot be inferred.
    """
    re_tok, im_tok = _split_complex_text(text)
    if backend == "rational":
        if _is_decimal_token(re_tok) or _is_decimal_token(im_tok):
            raise DomainError(
                f"decimal scalar text {text!r} cannot be used with the rational backend"
            )
        try:
            return RationalComplex(Fraction(re_tok), Fraction(im_tok))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse scalar text {text!r}: {exc}") from None
    if backend == "float":
        try:
            re_v = float(Fraction(re_tok)) if not _is_decimal_token(re_tok) else float(re_tok)
            im_v = float(Fraction(im_tok)) if not _is_decimal_token(im_tok) else float(im_tok)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse scalar text {text!r}: {exc}") from None
        return complex(re_v, im_v)
    raise ValueError(f"unknown backend {backend!r}")
