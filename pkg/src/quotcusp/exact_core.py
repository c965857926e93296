"""Exact integer linear algebra.

Scalars are Python ``int`` (arbitrary precision) and ``fractions.Fraction``.
Matrices are immutable row-major tuples wrapped in :class:`IntMatrix`.

>>> A = IntMatrix([[-2, -2], [4, 6]])
>>> det(A)
-4
>>> snf(A).d
(2, 2)
>>> abelian_quotient(A)
(0, FiniteAbelianGroup(invariant_factors=(2, 2)))
"""

from __future__ import annotations

import math

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CuspError, SingularMatrix

__all__ = [
    "IntMatrix",
    "SnfResult",
    "FiniteAbelianGroup",
    "snf",
    "det",
    "rat_inverse",
    "abelian_quotient",
    "lattice_basis",
    "identity",
]


class IntMatrix:
    """Dense immutable integer matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if rows:
            widths = {len(r) for r in rows}
            if len(widths) != 1:
                raise CuspError("ragged matrix rows")
            (width,) = widths
        else:
            width = ncols or 0
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_flat(cls, nrows: int, ncols: int, entries: Sequence[int]) -> IntMatrix:
        if nrows * ncols != len(entries):
            raise CuspError(f"{len(entries)} entries do not fill a {nrows}x{ncols} matrix")
        return cls([entries[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(zip(*self.rows), self.nrows) if self.rows else IntMatrix([], 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            return self.shape == other.shape and self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise CuspError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        return IntMatrix(
            [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in self.rows],
            other.ncols,
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> IntMatrix:
        return IntMatrix([[-x for x in r] for r in self.rows], self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self == self.T

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"


def identity(n: int) -> IntMatrix:
    return IntMatrix([[int(i == j) for j in range(n)] for i in range(n)], n)


def diagonal(entries: Sequence[int], nrows: int, ncols: int) -> IntMatrix:
    return IntMatrix(
        [[entries[i] if i == j and i < len(entries) else 0 for j in range(ncols)] for i in range(nrows)],
        ncols,
    )


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/d_1 + ... + Z/d_r with d_i >= 2 and d_i | d_{i+1}."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(f) for f in self.invariant_factors)
        if any(f < 2 for f in fs):
            raise CuspError(f"invariant factors must be >= 2: {fs}")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise CuspError(f"invariant factors must form a divisibility chain: {fs}")
        object.__setattr__(self, "invariant_factors", fs)

    @classmethod
    def from_diagonal(cls, entries: Iterable[int]) -> FiniteAbelianGroup:
        """Group ``+ Z/e`` over nonzero diagonal entries; units are dropped.

        The entries need not divide each other: pairs are replaced by
        ``(gcd, lcm)`` until they form a chain.
        """
        fs = [abs(e) for e in entries]
        if any(f == 0 for f in fs):
            raise CuspError("zero diagonal entry gives an infinite group")
        for i in range(len(fs)):
            for j in range(i + 1, len(fs)):
                g = math.gcd(fs[i], fs[j])
                fs[i], fs[j] = g, fs[i] * fs[j] // g
        return cls(tuple(f for f in fs if f > 1))

    @property
    def order(self) -> int:
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n

    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{f}" for f in self.invariant_factors)


@dataclass(frozen=True)
class SnfResult:
    """``U @ A @ V == diag(d)`` with unimodular ``U``, ``V``."""

    d: tuple[int, ...]
    U: IntMatrix
    V: IntMatrix

    def diagonal_matrix(self) -> IntMatrix:
        return diagonal(self.d, self.U.nrows, self.V.ncols)


def snf(A: IntMatrix) -> SnfResult:
    """Smith normal form with transforming matrices.

    Pivots on the entry of smallest magnitude and repairs divisibility by
    folding an offending row into the pivot row, so the diagonal ends up as a
    divisibility chain ``d_0 | d_1 | ...`` followed by zeros.
    """
    m, n = A.shape
    D = [list(r) for r in A.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        cands = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not cands:
            break
        _, i, j = min(cands)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            line = [(abs(D[i][t]), i, None) for i in range(t + 1, m) if D[i][t]]
            line += [(abs(D[t][j]), None, j) for j in range(t + 1, n) if D[t][j]]
            if line:
                _, i, j = min(line, key=lambda c: c[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]

    d = tuple(D[i][i] for i in range(min(m, n)))
    return SnfResult(d, IntMatrix(U, m), IntMatrix(V, n))


def det(A: IntMatrix) -> int:
    """Fraction-free Bareiss determinant."""
    if not A.is_square():
        raise CuspError(f"determinant of non-square {A.nrows}x{A.ncols} matrix")
    n = A.nrows
    if n == 0:
        return 1
    M = [list(r) for r in A.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rat_inverse(A) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse over Q by Gauss-Jordan elimination.

    Accepts an :class:`IntMatrix` or any square nested sequence of rationals.
    """
    rows = A.rows if isinstance(A, IntMatrix) else tuple(tuple(r) for r in A)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise CuspError("inverse of a non-square matrix")
    M = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col]), None)
        if piv is None:
            raise SingularMatrix("matrix has determinant 0")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for i in range(n):
            if i != col and M[i][col]:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[col])]
    return tuple(tuple(r[n:]) for r in M)


def abelian_quotient(relations: IntMatrix) -> tuple[int, FiniteAbelianGroup]:
    """Decompose Z^cols / (row span of ``relations``) as free rank plus torsion."""
    res = snf(relations)
    nonzero = [x for x in res.d if x]
    return relations.ncols - len(nonzero), FiniteAbelianGroup.from_diagonal(nonzero)


def lattice_basis(generators: IntMatrix) -> IntMatrix:
    """Basis (as columns) of the lattice spanned by the columns of ``generators``."""
    res = snf(generators)
    r = sum(1 for x in res.d if x)
    Uinv = rat_inverse(res.U)
    cols = [[int(Uinv[i][j] * res.d[j]) for i in range(generators.nrows)] for j in range(r)]
    return IntMatrix(zip(*cols), r) if cols else IntMatrix([[] for _ in range(generators.nrows)], 0)
