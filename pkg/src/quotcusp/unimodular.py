"""Positive unimodular 2x2 matrices and their weight sequences.

A quotient-cusp with chain weights ``e_1..e_k`` is classified by

    B = [[0, 1], [-1, 0]] @ M(b_k) @ ... @ M(b_1),   M(b) = [[0, -1], [1, b]]

with ``b = (e_1 - 1, e_2, ..., e_{k-1}, e_k - 1)``.  The map is a bijection
onto unimodular matrices with four positive entries; :func:`factor_positive`
inverts it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import CuspError, InvalidSequence, NotPositive, NotUnimodular
from .exact_core import IntMatrix


@dataclass(frozen=True)
class UniMat2:
    """2x2 integer matrix ``[[a, b], [c, d]]``."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def from_rows(cls, rows) -> UniMat2:
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def from_flat(cls, entries: Sequence[int]) -> UniMat2:
        if len(entries) != 4:
            raise CuspError(f"a 2x2 matrix needs 4 entries, got {len(entries)}")
        return cls(*(int(x) for x in entries))

    @classmethod
    def identity(cls) -> UniMat2:
        return cls(1, 0, 0, 1)

    def __matmul__(self, o: UniMat2) -> UniMat2:
        return UniMat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __sub__(self, o: UniMat2) -> UniMat2:
        return UniMat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> UniMat2:
        return UniMat2(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, n: int) -> UniMat2:
        base = self if n >= 0 else self.inverse()
        out = UniMat2.identity()
        for _ in range(abs(n)):
            out = out @ base
        return out

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def inverse(self) -> UniMat2:
        """Integral inverse; only defined for determinant +-1."""
        dt = self.det
        if dt not in (1, -1):
            raise NotUnimodular(f"det = {dt}, no integral inverse")
        return UniMat2(self.d * dt, -self.b * dt, -self.c * dt, self.a * dt)

    def apply(self, v: Sequence) -> tuple:
        x, y = v
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def to_int_matrix(self) -> IntMatrix:
        return IntMatrix(self.rows())

    def tolist(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def is_positive(self) -> bool:
        return min(self.a, self.b, self.c, self.d) >= 1


def M(e: int) -> UniMat2:
    return UniMat2(0, -1, 1, e)


# The constant factor in front of the product defining B, and the swap J.
R = UniMat2(0, 1, -1, 0)
J = UniMat2(0, 1, 1, 0)
FLIP = UniMat2(1, 0, 0, -1)


def H(b: int) -> UniMat2:
    return UniMat2(-1, 0, b, 1)


def word_product(weights: Iterable[int]) -> UniMat2:
    """``M(w_k) @ ... @ M(w_1)`` for ``weights = (w_1, ..., w_k)``."""
    out = UniMat2.identity()
    for w in weights:
        out = M(w) @ out
    return out


@dataclass(frozen=True)
class QcClass:
    """Classifying matrix of a quotient-cusp, identified up to swapping a and d."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, int(getattr(self, name)))
        if min(self.a, self.b, self.c, self.d) < 1:
            raise NotPositive(f"classifying matrix entries must be >= 1: {self.entries}")
        if self.a * self.d - self.b * self.c != 1:
            raise NotUnimodular(f"ad - bc = {self.a * self.d - self.b * self.c}, expected 1")

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def canonical(self) -> tuple[int, int, int, int]:
        return min(self.entries, (self.d, self.b, self.c, self.a))

    def __eq__(self, other):
        if isinstance(other, QcClass):
            return self.canonical() == other.canonical()
        return NotImplemented

    def __hash__(self):
        return hash(self.canonical())

    def matrix(self) -> UniMat2:
        return UniMat2(*self.entries)

    def e_sequence(self) -> tuple[int, ...]:
        return e_from_b(factor_positive(self.matrix()))


def validate_bseq(bs: Sequence[int]) -> tuple[int, ...]:
    bs = tuple(int(b) for b in bs)
    if len(bs) < 2:
        raise InvalidSequence(f"need at least two entries, got {bs}")
    if bs[0] < 1 or bs[-1] < 1 or any(b < 2 for b in bs[1:-1]):
        raise InvalidSequence(f"need b_1, b_k >= 1 and interior b_i >= 2: {bs}")
    if bs[0] == 1 and bs[-1] == 1 and all(b == 2 for b in bs[1:-1]):
        raise InvalidSequence(f"at least one inequality must be strict: {bs}")
    return bs


def validate_eseq(es: Sequence[int]) -> tuple[int, ...]:
    es = tuple(int(e) for e in es)
    if len(es) < 2:
        raise InvalidSequence(f"need at least two weights, got {es}")
    if any(e < 2 for e in es):
        raise InvalidSequence(f"weights must be >= 2: {es}")
    if all(e == 2 for e in es):
        raise InvalidSequence(f"some weight must be >= 3: {es}")
    return es


def b_from_e(es: Sequence[int]) -> tuple[int, ...]:
    es = tuple(es)
    return (es[0] - 1,) + es[1:-1] + (es[-1] - 1,)


def e_from_b(bs: Sequence[int]) -> tuple[int, ...]:
    bs = tuple(bs)
    return (bs[0] + 1,) + bs[1:-1] + (bs[-1] + 1,)


def build_B(bs: Sequence[int]) -> UniMat2:
    bs = validate_bseq(bs)
    B = R @ word_product(bs)
    assert B.det == 1 and B.is_positive(), B
    return B


class LargestCase(str, Enum):
    BETA = "beta"  # b_1 > 1 and b_k > 1
    ALPHA = "alpha"  # b_1 = 1 < b_k
    DELTA = "delta"  # b_1 > 1 = b_k
    GAMMA = "gamma"  # b_1 = 1 = b_k


def _check_positive_unimodular(B: UniMat2) -> None:
    if not B.is_positive():
        raise NotPositive(f"entries must all be >= 1: {B.tolist()}")
    if B.det != 1:
        raise NotUnimodular(f"det = {B.det}, expected 1")


def _largest(B: UniMat2) -> LargestCase:
    # B = [[alpha, beta], [gamma, delta]]
    vals = {LargestCase.ALPHA: B.a, LargestCase.BETA: B.b, LargestCase.GAMMA: B.c, LargestCase.DELTA: B.d}
    top = max(vals.values())
    winners = [k for k, v in vals.items() if v == top]
    if len(winners) != 1:
        raise CuspError(f"no strictly largest entry in {B.tolist()}")
    return winners[0]


def _peel_all_ge2(P: UniMat2) -> list[int]:
    """Factor ``P = M(b_k) @ ... @ M(b_1)`` with every ``b_i >= 2``.

    ``P = [[-gamma, -delta], [alpha, beta]]``; each step takes
    ``b_1 = ceil(delta / gamma)`` and strictly decreases gamma.
    """
    out = []
    while True:
        gamma, delta, beta = -P.a, -P.b, P.d
        if gamma == 0:
            if P != M(beta):
                raise CuspError(f"factorization failed at {P.tolist()}")
            out.append(beta)
            return out
        if gamma < 0:
            raise CuspError(f"factorization failed at {P.tolist()}")
        b1 = -(-delta // gamma)
        out.append(b1)
        P = P @ M(b1).inverse()


def factor_positive(B: UniMat2) -> tuple[int, ...]:
    """Unique ``bs`` with ``build_B(bs) == B`` for positive unimodular ``B``."""
    _check_positive_unimodular(B)
    P = R.inverse() @ B
    case = _largest(B)
    one = M(1)
    if case is LargestCase.BETA:
        bs = _peel_all_ge2(P)
    elif case is LargestCase.ALPHA:
        bs = [1] + _peel_all_ge2(P @ one.inverse())
    elif case is LargestCase.DELTA:
        bs = _peel_all_ge2(one.inverse() @ P) + [1]
    else:
        bs = [1] + _peel_all_ge2(one.inverse() @ P @ one.inverse()) + [1]
    bs = tuple(bs)
    if build_B(bs) != B:
        raise CuspError(f"factorization of {B.tolist()} does not rebuild: {bs}")
    return bs


def classify_largest(B: UniMat2) -> LargestCase:
    """Which entry of ``B`` is strictly largest, cross-checked against the end flags."""
    _check_positive_unimodular(B)
    case = _largest(B)
    bs = factor_positive(B)
    first, last = bs[0] > 1, bs[-1] > 1
    expected = {
        (True, True): LargestCase.BETA,
        (False, True): LargestCase.ALPHA,
        (True, False): LargestCase.DELTA,
        (False, False): LargestCase.GAMMA,
    }[(first, last)]
    if case is not expected:
        raise CuspError(f"largest entry {case.value} disagrees with flags of {bs}")
    return case


def pasting_matrix(es: Sequence[int]) -> UniMat2:
    """Gluing matrix of the two Moebius-band pieces.

    ``FLIP @ J @ H_k @ J @ H_{k-1} @ J ... J @ H_1 @ J`` with one ``J``
    between consecutive ``H`` factors; ``b_i = e_i - 1`` at the two ends.
    """
    es = validate_eseq(es)
    out = J
    for b in b_from_e(es):
        out = J @ H(b) @ out
    return FLIP @ out
