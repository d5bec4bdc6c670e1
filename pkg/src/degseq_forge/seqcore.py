"""Arithmetic on degree sequences.

Sequences are non-increasing tuples ``(d_1, ..., d_n)``.  Positions in the
public API follow the usual 1-based reading (``d_1`` is the largest degree)
wherever a formula is involved; Python indexing stays 0-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

from .errors import (
    CriterionFails,
    IndexOutOfRange,
    InvalidDegree,
    InvalidInput,
    NotSimple,
    ParseError,
)


@dataclass(frozen=True)
class DegreeSequence:
    degrees: tuple[int, ...]

    def __post_init__(self):
        d = tuple(int(x) for x in self.degrees)
        object.__setattr__(self, "degrees", d)
        if not d:
            raise InvalidInput("a degree sequence needs at least one entry")
        n = len(d)
        for i, x in enumerate(d):
            if x < 0:
                raise InvalidDegree(f"negative degree {x} at position {i + 1}")
            if x > n - 1:
                raise NotSimple(f"degree {x} at position {i + 1} exceeds n-1={n - 1}")
        if any(d[i] < d[i + 1] for i in range(n - 1)):
            raise InvalidInput("degrees must be non-increasing; use normalize()")

    def __len__(self):
        return len(self.degrees)

    def __iter__(self) -> Iterator[int]:
        return iter(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]

    @property
    def n(self) -> int:
        return len(self.degrees)

    def d(self, i: int) -> int:
        """The 1-based term ``d_i``."""
        return self.degrees[i - 1]

    @property
    def is_positive(self) -> bool:
        return self.degrees[-1] > 0

    def __str__(self):
        return ",".join(map(str, self.degrees))


@dataclass(frozen=True)
class SequenceProfile:
    m: int
    delta1: int
    delta_n: int
    degree_sum: int
    gamma_min: int | None


@dataclass(frozen=True)
class FactorSpec:
    k: int
    n: int | None = None

    def __post_init__(self):
        if self.k < 0:
            raise InvalidInput(f"factor regularity must be non-negative, got {self.k}")

    @property
    def parity_ok(self) -> bool:
        return self.n is None or (self.k * self.n) % 2 == 0


def normalize(raw: Iterable[int]) -> DegreeSequence:
    """Sort ``raw`` into a non-increasing :class:`DegreeSequence`.

    Raises
    ------
    InvalidDegree
        If an entry is negative.
    NotSimple
        If an entry is at least the sequence length.
    """
    vals = [int(x) for x in raw]
    for x in vals:
        if x < 0:
            raise InvalidDegree(f"negative degree {x}")
    n = len(vals)
    for x in vals:
        if x >= n:
            raise NotSimple(f"degree {x} is not realizable on {n} vertices")
    return DegreeSequence(tuple(sorted(vals, reverse=True)))


def _as_list(pi) -> list[int]:
    if isinstance(pi, DegreeSequence):
        return list(pi.degrees)
    return sorted((int(x) for x in pi), reverse=True)


def strong_index(pi) -> int:
    """Largest 1-based ``i`` with ``d_i >= i``; 0 for the all-zero sequence."""
    d = _as_list(pi)
    m = 0
    for i, x in enumerate(d, start=1):
        if x >= i:
            m = i
        else:
            break
    return m


def _erdos_gallai(d: Sequence[int], last: int) -> bool:
    # d is non-increasing and non-negative; test l = 1..last.
    n = len(d)
    if sum(d) % 2:
        return False
    prefix = [0, *accumulate(d)]
    total = prefix[-1]
    # w = number of entries >= l; non-increasing in l
    w = n
    for l in range(1, last + 1):
        while w > 0 and d[w - 1] < l:
            w -= 1
        lhs = prefix[l]
        cut = max(l, w)
        rhs = l * (l - 1) + l * max(0, w - l) + (total - prefix[cut])
        if lhs > rhs:
            return False
    return True


def is_graphic(pi, strong_index_only: bool = True) -> bool:
    """Decide whether some simple graph realizes ``pi``.

    Accepts a :class:`DegreeSequence` or any iterable of integers (sorted
    internally).  Negative entries make the sequence non-graphic.  With
    ``strong_index_only`` the Erdős–Gallai inequalities are checked only for
    ``l <= m(pi)``; otherwise for every ``l <= n``.
    """
    d = _as_list(pi)
    if not d:
        return True
    if d[-1] < 0:
        return False
    if d[0] > len(d) - 1:
        return False
    last = strong_index(d) if strong_index_only else len(d)
    return _erdos_gallai(d, last)


def shift(pi, k: int) -> list[int]:
    """Subtract ``k`` from every term; entries may go negative."""
    return [x - k for x in _as_list(pi)]


def gamma_bound(pi) -> int:
    """``max_{l <= m} floor((d_l + l) / 2) + 1`` for a positive sequence."""
    d = _as_list(pi)
    if not d or d[-1] <= 0:
        raise InvalidInput("gamma_bound needs a positive sequence")
    m = strong_index(d)
    return max((d[l - 1] + l) // 2 for l in range(1, m + 1)) + 1


def _criterion_index(d: Sequence[int]) -> int:
    idx = d[0] - d[-1] + 1
    if idx > len(d):
        raise IndexOutOfRange(f"criterion index {idx} exceeds n={len(d)}")
    return idx


def _spec_k(spec) -> int:
    return spec.k if isinstance(spec, FactorSpec) else int(spec)


def kfactor_condition(pi, spec) -> bool:
    """Evaluate ``d_{d1-dn+1} >= d1 - dn + k - 1``.

    ``True`` guarantees a realization with a ``k``-factor; ``False`` does not
    rule one out.

    Raises
    ------
    IndexOutOfRange
        When ``d1 - dn + 1 > n`` (criterion inapplicable).
    InvalidInput
        When ``k > dn`` or ``k*n`` is odd.
    """
    d = _as_list(pi)
    k = _spec_k(spec)
    if k > d[-1]:
        raise InvalidInput(f"k={k} exceeds minimum degree {d[-1]}")
    if (k * len(d)) % 2:
        raise InvalidInput(f"k*n = {k * len(d)} is odd")
    idx = _criterion_index(d)
    return d[idx - 1] >= d[0] - d[-1] + k - 1


def max_even_k(pi, k) -> int:
    """Largest ``k' >= k`` with ``k' <= dn``, ``k'n`` even, and the criterion holding.

    Raises
    ------
    CriterionFails
        If the criterion does not hold at ``k``.
    """
    d = _as_list(pi)
    k = _spec_k(k)
    if not kfactor_condition(d, k):
        raise CriterionFails(f"criterion fails at k={k}")
    n = len(d)
    best = k
    idx = _criterion_index(d)
    for kp in range(k, d[-1] + 1):
        if (kp * n) % 2 == 0 and d[idx - 1] >= d[0] - d[-1] + kp - 1:
            best = kp
    return best


def profile(pi) -> SequenceProfile:
    d = _as_list(pi)
    gm = gamma_bound(d) if d and d[-1] > 0 else None
    return SequenceProfile(
        m=strong_index(d),
        delta1=d[0],
        delta_n=d[-1],
        degree_sum=sum(d),
        gamma_min=gm,
    )


_SPLIT = re.compile(r"[,\s]+")


def parse_sequences(text: str) -> list[list[int]]:
    """Parse the line-oriented sequence format (commas or whitespace, ``#`` comments)."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            out.append([int(tok) for tok in _SPLIT.split(s) if tok])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return out
