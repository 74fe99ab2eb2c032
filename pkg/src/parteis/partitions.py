"""Integer partitions: enumeration, conjugation, counting, divisor sums.

Partitions are immutable values and every operation is pure, so everything
here is safe to share between threads.
"""

from __future__ import annotations

import threading
from typing import Iterator


class Partition:
    """A non-increasing tuple of positive integer parts; () is the empty partition."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise ValueError(f"partition parts must be positive, got {p}")
            if i > 0 and parts[i - 1] < p:
                raise ValueError(f"partition parts must be non-increasing, got {parts}")
        self.parts = parts

    @classmethod
    def _from_sorted(cls, parts: tuple) -> "Partition":
        # fast path for internal callers that guarantee a valid tuple
        obj = object.__new__(cls)
        obj.parts = parts
        return obj

    @classmethod
    def from_text(cls, text: str) -> "Partition":
        """Parse the comma-separated text form; the empty string is the empty partition."""
        text = text.strip()
        if not text:
            return cls._from_sorted(())
        return cls(int(tok) for tok in text.split(","))

    def to_text(self) -> str:
        """Comma-separated parts, e.g. "3,2,2,1"; empty string for the empty partition."""
        return ",".join(str(p) for p in self.parts)

    @property
    def size(self) -> int:
        """Sum of parts."""
        return sum(self.parts)

    @property
    def length(self) -> int:
        """Number of parts."""
        return len(self.parts)

    def conjugate(self) -> "Partition":
        """Transpose of the diagram: part a of the conjugate counts parts >= a."""
        if not self.parts:
            return self
        conj = [0] * self.parts[0]
        for p in self.parts:
            for i in range(p):
                conj[i] += 1
        return Partition._from_sorted(tuple(conj))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition({self.parts!r})"


EMPTY = Partition._from_sorted(())


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Yield every partition of n once, in reverse-lexicographic order.

    (n) comes first and (1,...,1) last; n = 0 yields the empty partition.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield EMPTY
        return
    parts = [n]
    while True:
        yield Partition._from_sorted(tuple(parts))
        # decrement the rightmost part > 1, then repack the tail greedily
        i = len(parts) - 1
        while i >= 0 and parts[i] == 1:
            i -= 1
        if i < 0:
            return
        rem = len(parts) - i  # the ones we drop, plus 1 taken off parts[i]
        parts[i] -= 1
        del parts[i + 1:]
        cap = parts[i]
        while rem:
            take = cap if cap < rem else rem
            parts.append(take)
            rem -= take


_pcount = [1]
_pcount_lock = threading.Lock()


def partition_count(n: int) -> int:
    """p(n) via the pentagonal-number recurrence, exact at any size."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n < len(_pcount):
        return _pcount[n]
    with _pcount_lock:
        while len(_pcount) <= n:
            m = len(_pcount)
            total = 0
            k = 1
            while True:
                g1 = m - k * (3 * k - 1) // 2
                if g1 < 0:
                    break
                sign = -1 if k % 2 == 0 else 1
                total += sign * _pcount[g1]
                g2 = m - k * (3 * k + 1) // 2
                if g2 >= 0:
                    total += sign * _pcount[g2]
                k += 1
            _pcount.append(total)
    return _pcount[n]


def sigma(j: int, n: int) -> int:
    """Divisor power sum: sum of d**j over the divisors d of n (n >= 1)."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    if n < 1:
        raise ValueError("n must be positive")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** j
            other = n // d
            if other != d:
                total += other ** j
        d += 1
    return total


def rectangle(side: int) -> Partition:
    """The square partition with `side` parts all equal to `side`."""
    if side < 1:
        raise ValueError("side must be positive")
    return Partition._from_sorted((side,) * side)
