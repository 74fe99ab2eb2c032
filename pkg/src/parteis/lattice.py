"""Four-fold symmetric vertex lattice of a partition in the complex plane.

For a partition with parts (p_1 >= ... >= p_r) and a fixed nonreal z, the
lattice is the point set {a*z + b : 1 <= |b| <= r, 1 <= |a| <= p_|b|}. It is
the diagram of the partition copied into all four quadrants of the plane
spanned by z and 1, and it is what the series in `parteis.eisenstein` sum
over.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

from .numerics import abs_squared, require_nonreal
from .partitions import Partition


class CoeffPair(NamedTuple):
    """Integer coefficients (a, b), both nonzero, of a lattice vertex a*z + b."""

    a: int
    b: int


_QUADRANT_SIGNS = {1: (1, 1), 2: (1, -1), 3: (-1, -1), 4: (-1, 1)}


def quadrant_pairs(lam: Partition, quadrant: int) -> Iterator[CoeffPair]:
    """Pairs of one quadrant (1: a,b>0; 2: a>0,b<0; 3: a,b<0; 4: a<0,b>0).

    Each quadrant holds exactly size(lam) pairs, |b| ascending then |a|.
    """
    try:
        sign_a, sign_b = _QUADRANT_SIGNS[quadrant]
    except (KeyError, TypeError):
        raise ValueError(f"quadrant must be 1..4, got {quadrant!r}") from None
    for row, row_len in enumerate(lam.parts, start=1):
        b = sign_b * row
        for col in range(1, row_len + 1):
            yield CoeffPair(sign_a * col, b)


def coeff_pairs(lam: Partition) -> Iterator[CoeffPair]:
    """All 4*size(lam) pairs, streamed quadrant by quadrant in order 1,2,3,4."""
    for quadrant in (1, 2, 3, 4):
        yield from quadrant_pairs(lam, quadrant)


def point(pair: CoeffPair, z):
    """The vertex a*z + b; never zero because z is required to be nonreal."""
    require_nonreal(z)
    return pair.a * z + pair.b


def min_modulus_squared(lam: Partition, z):
    """Smallest |a*z+b|^2 over the lattice; exact when z is rational-complex."""
    require_nonreal(z)
    if not lam.parts:
        raise ValueError("empty partition has no lattice points")
    best = None
    # the minimum is attained in quadrant 1 or 2 by the four-fold symmetry
    for quadrant in (1, 2):
        for pair in quadrant_pairs(lam, quadrant):
            m = abs_squared(pair.a * z + pair.b)
            if best is None or m < best:
                best = m
    return best


# ---------------------------------------------------------------------------
# SVG rendering


def _fmt(v: float) -> str:
    return f"{v + 0.0:.6g}"


def render_svg(
    lam: Partition,
    z,
    *,
    scale: float = 20.0,
    dot_radius: float = 3.0,
    axes: bool = True,
    diagonal: bool = True,
) -> str:
    """Draw the lattice as an SVG document.

    One circle element per coefficient pair, placed at (Re w, -Im w) * scale,
    in the same deterministic order as `coeff_pairs`, so output bytes are
    stable for a given input. The canvas is square, sized from the first part
    and the length of the partition.
    """
    require_nonreal(z)
    zc = complex(z)
    width = lam.parts[0] if lam.parts else 0
    extent = max(width * abs(zc.real) + lam.length, width * abs(zc.imag), 2.0) + 1.5
    half = extent * scale
    lines: list[str] = []
    lines.append(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_fmt(2 * half)}" height="{_fmt(2 * half)}" '
        f'viewBox="{_fmt(-half)} {_fmt(-half)} {_fmt(2 * half)} {_fmt(2 * half)}">'
    )
    if axes:
        lines.append(
            f'  <line x1="{_fmt(-half)}" y1="0" x2="{_fmt(half)}" y2="0" '
            'stroke="black" stroke-width="1"/>'
        )
        lines.append(
            f'  <line x1="0" y1="{_fmt(-half)}" x2="0" y2="{_fmt(half)}" '
            'stroke="black" stroke-width="1"/>'
        )
        lines.append(
            f'  <text x="{_fmt(half - 14)}" y="-5" font-size="13">x</text>'
        )
        lines.append(
            f'  <text x="5" y="{_fmt(-half + 14)}" font-size="13">iy</text>'
        )
    if diagonal:
        reach = max(abs(zc.real), abs(zc.imag))
        t = (extent - 0.75) / reach * scale
        x2, y2 = t * zc.real, -t * zc.imag
        lines.append(
            f'  <line x1="{_fmt(-x2)}" y1="{_fmt(-y2)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            'stroke="black" stroke-width="1" stroke-dasharray="6,4"/>'
        )
        lines.append(
            f'  <text x="{_fmt(x2 + 4)}" y="{_fmt(y2)}" font-size="13">tz</text>'
        )
    for pair in coeff_pairs(lam):
        w = pair.a * zc + pair.b
        lines.append(
            f'  <circle cx="{_fmt(w.real * scale)}" cy="{_fmt(-w.imag * scale)}" '
            f'r="{_fmt(dot_radius)}" fill="black"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
