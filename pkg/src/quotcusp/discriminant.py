"""Discriminant groups, linking forms and abelian covers of torus bundles.

A discriminant group is presented as ``Z^n / R Z^n`` for a nonsingular
integer matrix ``R`` together with a rational matrix ``F`` such that the
linking pairing is ``l(x, y) = x^T F y mod 1``.

* plumbing graph with intersection matrix ``S``: ``R = S``, ``F = -S^-1``;
  the class of a dual-lattice vector ``v`` (``S v`` integral) is ``x = S v``.
* torus bundle with monodromy ``A``: ``R = A - I`` and
  ``l([v], [w]) = ((A - I)^-1 v) . w`` for the skew form
  ``v . w = v_1 w_2 - v_2 w_1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cusp_graphs import (
    CuspCycle,
    QuotientCuspGraph,
    as_cycle,
    dual_cusp,
    intersection_matrix,
    is_complete_intersection,
    monodromy,
    reduce_to_cycle,
)
from .errors import (
    CuspError,
    NotASubgroupLattice,
    NotInvariant,
    OrderNotPrime,
    SingularIntersectionForm,
    TraceTooSmall,
)
from .exact_core import FiniteAbelianGroup, IntMatrix, det, rat_inverse, snf
from .unimodular import QcClass, UniMat2, b_from_e, build_B

SKEW = ((0, 1), (-1, 0))

Vector = tuple


def _matvec(A, v):
    return tuple(sum(Fraction(a) * x for a, x in zip(row, v)) for row in A)


def _bilinear(x, F, y) -> Fraction:
    return sum(Fraction(x[i]) * F[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))


def _is_integral(v) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


@dataclass(frozen=True)
class DiscriminantData:
    """Finite group ``Z^n / R Z^n`` with a ``Q/Z``-valued pairing."""

    source: str
    relation: IntMatrix
    form: tuple[tuple[Fraction, ...], ...]
    group: FiniteAbelianGroup
    generators: tuple[Vector, ...]

    @classmethod
    def build(cls, source: str, relation: IntMatrix, form) -> DiscriminantData:
        res = snf(relation)
        if any(x == 0 for x in res.d):
            raise SingularIntersectionForm(f"relation matrix is singular: {relation.tolist()}")
        # U R V = diag(d): the class of U^-1 e_i has order d_i
        Uinv = rat_inverse(res.U)
        n = relation.nrows
        gens = tuple(
            tuple(int(Uinv[r][i]) for r in range(n)) for i, x in enumerate(res.d) if x > 1
        )
        return cls(source, relation, tuple(tuple(r) for r in form), FiniteAbelianGroup.from_diagonal(res.d), gens)

    @property
    def order(self) -> int:
        return self.group.order

    def contains_zero(self, x: Sequence[int]) -> bool:
        """Whether ``x`` lies in ``R Z^n``."""
        sol = _matvec(rat_inverse(self.relation), x)
        return _is_integral(sol)

    def equal(self, x, y) -> bool:
        return self.contains_zero([a - b for a, b in zip(x, y)])

    def pairing(self, x, y) -> Fraction:
        """Linking number in ``[0, 1)``."""
        return _bilinear(x, self.form, y) % 1

    def element_order(self, x) -> int:
        # order divides the exponent of the group
        exp = self.group.invariant_factors[-1] if self.group.invariant_factors else 1
        for k in range(1, exp + 1):
            if exp % k == 0 and self.contains_zero([k * a for a in x]):
                return k
        raise CuspError("element order does not divide the exponent")

    def elements(self) -> list[Vector]:
        """All elements as combinations of the invariant-factor generators."""
        out = [tuple(0 for _ in range(self.relation.nrows))]
        for g, d in zip(self.generators, self.group.invariant_factors):
            out = [tuple(a + k * b for a, b in zip(x, g)) for x in out for k in range(d)]
        return out

    def is_symmetric(self) -> bool:
        return all(
            (self.pairing(x, y) - self.pairing(y, x)) % 1 == 0
            for x in self.generators for y in self.generators
        )

    def is_nonsingular(self) -> bool:
        """``x -> l(x, .)`` is injective, checked through its image size."""
        fs = self.group.invariant_factors
        m = len(fs)
        if m == 0:
            return True
        rows = []
        for gi in self.generators:
            rows.append([int(self.pairing(gi, gj) * d) for gj, d in zip(self.generators, fs)])
        rows += [[d if i == j else 0 for j in range(m)] for i, d in enumerate(fs)]
        # image of D in  (+) Z/d_j  has order prod(d) / [Z^m : L]
        index = 1
        for x in snf(IntMatrix(rows)).d:
            index *= x
        return index == 1

    def from_dual_vector(self, v) -> Vector:
        """Class of a dual-lattice vector for a plumbing source (``x = S v``)."""
        x = _matvec(self.relation.rows, v)
        if not _is_integral(x):
            raise CuspError(f"{v} is not in the dual lattice")
        return tuple(int(a) for a in x)


def discriminant_of_graph(g) -> DiscriminantData:
    """Cokernel of the intersection form of a quotient-cusp graph or cusp cycle."""
    S = intersection_matrix(g)
    if det(S) == 0:
        raise SingularIntersectionForm("intersection form is degenerate")
    Sinv = rat_inverse(S)
    F = tuple(tuple(-x for x in row) for row in Sinv)
    return DiscriminantData.build("graph", S, F)


def discriminant_of_monodromy(A: UniMat2) -> DiscriminantData:
    if A.trace < 3:
        raise TraceTooSmall(f"trace {A.trace} < 3")
    B = A - UniMat2.identity()
    Binv = rat_inverse(B.rows())
    # ((A-I)^-1 v) . w = v^T (A-I)^-T SKEW w
    F = tuple(
        tuple(sum(Binv[k][i] * SKEW[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )
    return DiscriminantData.build("monodromy", B.to_int_matrix(), F)


# -- lattices between (A - I) Z^2 and Z^2 ---------------------------------------


@dataclass(frozen=True)
class Lattice2:
    """Rank-2 lattice with basis columns ``w1``, ``w2``."""

    w1: tuple[Fraction, Fraction]
    w2: tuple[Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "w1", tuple(Fraction(x) for x in self.w1))
        object.__setattr__(self, "w2", tuple(Fraction(x) for x in self.w2))
        if self.covolume() == 0:
            raise CuspError("lattice basis is linearly dependent")

    @classmethod
    def from_flat(cls, entries: Sequence) -> Lattice2:
        """``w11, w12, w21, w22``: the two basis vectors one after the other."""
        if len(entries) != 4:
            raise CuspError("a lattice needs four entries")
        return cls((entries[0], entries[1]), (entries[2], entries[3]))

    @classmethod
    def from_columns(cls, M: UniMat2 | Sequence) -> Lattice2:
        rows = M.rows() if isinstance(M, UniMat2) else M
        return cls((rows[0][0], rows[1][0]), (rows[0][1], rows[1][1]))

    @classmethod
    def standard(cls) -> Lattice2:
        return cls((1, 0), (0, 1))

    def basis_rows(self):
        return ((self.w1[0], self.w2[0]), (self.w1[1], self.w2[1]))

    def covolume(self) -> Fraction:
        return self.w1[0] * self.w2[1] - self.w2[0] * self.w1[1]

    def oriented(self) -> Lattice2:
        return self if self.covolume() > 0 else Lattice2(self.w2, self.w1)

    def coordinates(self, v) -> tuple[Fraction, Fraction]:
        return _matvec(rat_inverse(self.basis_rows()), v)

    def contains(self, v) -> bool:
        return _is_integral(self.coordinates(v))

    def contains_lattice(self, other: Lattice2) -> bool:
        return self.contains(other.w1) and self.contains(other.w2)

    def __eq__(self, other):
        if isinstance(other, Lattice2):
            return self.contains_lattice(other) and other.contains_lattice(self)
        return NotImplemented

    def __hash__(self):
        return hash(abs(self.covolume()))

    def is_integral(self) -> bool:
        return _is_integral(self.w1) and _is_integral(self.w2)

    def flat(self) -> list[Fraction]:
        return [*self.w1, *self.w2]


def _image_lattice(A: UniMat2) -> Lattice2:
    B = A - UniMat2.identity()
    return Lattice2.from_columns(B)


def check_subgroup_lattice(A: UniMat2, W: Lattice2) -> None:
    if not W.is_integral():
        raise NotASubgroupLattice("lattice is not contained in Z^2")
    if not W.contains_lattice(_image_lattice(A)):
        raise NotASubgroupLattice("lattice does not contain (A - I) Z^2")


def subgroup_order(A: UniMat2, W: Lattice2) -> int:
    """``|W / (A - I) Z^2|``."""
    return int(abs(det((A - UniMat2.identity()).to_int_matrix())) / abs(W.covolume()))


def orthogonal_complement(A: UniMat2, W: Lattice2) -> Lattice2:
    """Lattice ``W'`` with ``W' / (A - I) Z^2`` the annihilator of ``W / (A - I) Z^2``.

    ``W' = (1 / Delta) (A - I)^-1 W`` with ``Delta = [D : K] / |det(A - I)|``;
    the returned basis is the image of the basis of ``W`` and is therefore
    reverse-oriented relative to it.
    """
    check_subgroup_lattice(A, W)
    B = A - UniMat2.identity()
    index = abs(W.covolume())
    delta = Fraction(index) / abs(B.det)
    Binv = rat_inverse(B.rows())
    w1 = tuple(x / delta for x in _matvec(Binv, W.w1))
    w2 = tuple(x / delta for x in _matvec(Binv, W.w2))
    out = Lattice2(w1, w2)
    check_subgroup_lattice(A, out)
    return out


def action_on_lattice(A: UniMat2, W: Lattice2) -> UniMat2:
    """Matrix of ``A`` in the basis of ``W`` (oriented first)."""
    W = W.oriented()
    cols = [W.coordinates(A.apply(w)) for w in (W.w1, W.w2)]
    if not all(_is_integral(c) for c in cols):
        raise NotInvariant("A does not preserve the lattice")
    return UniMat2(int(cols[0][0]), int(cols[1][0]), int(cols[0][1]), int(cols[1][1]))


def cover_monodromy(A: UniMat2, W: Lattice2) -> UniMat2:
    check_subgroup_lattice(A, W)
    X = action_on_lattice(A, W)
    assert X.trace == A.trace and X.det == 1
    return X


@dataclass(frozen=True)
class DualityReport:
    cover: CuspCycle
    dual_cover: CuspCycle
    subgroup_order: int
    complement_order: int
    group_order: int
    passed: bool


def verify_mutual_duality(A: UniMat2, W: Lattice2) -> DualityReport:
    """The covers for ``K = W / (A-I)Z^2`` and for ``K^perp`` are dual cusps."""
    Wp = orthogonal_complement(A, W)
    C1, _ = reduce_to_cycle(cover_monodromy(A, W))
    C2, _ = reduce_to_cycle(cover_monodromy(A, Wp))
    n = abs(A.trace - 2)
    k1, k2 = subgroup_order(A, W), subgroup_order(A, Wp)
    ok = dual_cusp(C1) == C2 and dual_cusp(C2) == C1 and k1 * k2 == n
    return DualityReport(C1, C2, k1, k2, n, ok)


def hypersurface_cover(A: UniMat2) -> CuspCycle:
    """Fiberwise cover of the cusp with monodromy ``A`` by ``[3, 2, ..., 2]``.

    ``A`` acts on the lattice spanned by ``e_1`` and ``A e_1`` by the companion
    matrix ``[[0, -1], [1, t]]``.  Depending on the orientation of that basis
    the cover is the cusp ``[t]`` or its dual; passing to the discriminant
    cover if necessary gives the dual of ``[t]``.
    """
    t = A.trace
    if t < 3:
        raise TraceTooSmall(f"trace {t} < 3")
    h1 = (1, 0)
    h2 = A.apply(h1)
    basis = Lattice2(h1, h2)
    companion = UniMat2(0, -1, 1, t)
    X = action_on_lattice(A, basis)
    if basis.covolume() > 0:
        assert X == companion, X
    else:
        # swapping the basis conjugates by J
        assert UniMat2(0, 1, 1, 0) @ X @ UniMat2(0, 1, 1, 0) == companion, X
    single = CuspCycle((t,))
    cover, _ = reduce_to_cycle(X)
    assert cover in (single, dual_cusp(single))
    result = CuspCycle((3,) + (2,) * (t - 3))
    assert result == dual_cusp(single)
    return result


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_order_obstruction(C) -> bool:
    """True when no abelian cover of the cusp is a complete intersection.

    Only decided when ``|D|`` is prime: then every abelian cover repeats the
    cycle of the cusp or of its dual, and repeating keeps the excess above 4.
    """
    C = as_cycle(C)
    order = monodromy(C).trace - 2
    if not _is_prime(order):
        raise OrderNotPrime(f"|D| = {order} is not prime")
    return not is_complete_intersection(C) and not is_complete_intersection(dual_cusp(C))


@dataclass(frozen=True)
class KleinReport:
    v: Vector
    w: Vector
    order_v: int
    order_w: int
    distinct: bool
    linking: dict
    group_order: int
    quotient_order: int
    b: int
    passed: bool


def klein_vectors(g: QuotientCuspGraph) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Half the sum of the two leaves at the ``e_k`` end, and at the ``e_1`` end."""
    k = len(g.chain)
    n = k + 4
    half = Fraction(1, 2)
    v = tuple(half if i in (k + 2, k + 3) else Fraction(0) for i in range(n))
    w = tuple(half if i in (k, k + 1) else Fraction(0) for i in range(n))
    return v, w


def klein_subgroup_check(g: QuotientCuspGraph) -> KleinReport:
    D = discriminant_of_graph(g)
    vv, ww = klein_vectors(g)
    v, w = D.from_dual_vector(vv), D.from_dual_vector(ww)
    ov, ow = D.element_order(v), D.element_order(w)
    distinct = not D.equal(v, w)
    link = {"vv": D.pairing(v, v), "vw": D.pairing(v, w), "ww": D.pairing(w, w)}
    b = build_B(b_from_e(g.chain)).b if len(g.chain) >= 2 else None
    quotient = D.order // 4
    ok = (
        ov == 2 and ow == 2 and distinct
        and all(x == 0 for x in link.values())
        and D.order % 4 == 0
        and (b is None or quotient == 4 * b)
    )
    return KleinReport(v, w, ov, ow, distinct, link, D.order, quotient, b, ok)
