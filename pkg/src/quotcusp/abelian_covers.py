"""Universal abelian cover of a quotient-cusp and its intermediate covers."""

from __future__ import annotations

from dataclasses import dataclass

from .cusp_graphs import (
    CuspCycle,
    QuotientCuspGraph,
    WeightedGraph,
    as_quotient_cusp,
    blow_down,
    double_cover_cycle,
    dual_cusp,
    is_complete_intersection,
    monodromy,
)
from .errors import CuspError, InvalidSequence
from .exact_core import FiniteAbelianGroup, IntMatrix, abelian_quotient, det
from .unimodular import M, QcClass, UniMat2


@dataclass(frozen=True)
class EquationPair:
    """Two defining equations, rendered as plain text.

    ``karras`` is ``xy = u^(2a) + v^(2a), uv = x^(2d) + y^(2d)``; ``diagonal`` is
    ``x^2 + y^2 = u^alpha v^beta, u^2 + v^2 = x^gamma y^delta``.
    """

    kind: str
    exponents: tuple[int, ...]

    def render(self) -> tuple[str, str]:
        if self.kind == "karras":
            p, q = self.exponents
            return (f"x*y = u^{p} + v^{p}", f"u*v = x^{q} + y^{q}")
        al, be, ga, de = self.exponents
        return (
            f"x^2 + y^2 = {_monomial(('u', al), ('v', be))}",
            f"u^2 + v^2 = {_monomial(('x', ga), ('y', de))}",
        )


def _monomial(*factors) -> str:
    parts = [v if e == 1 else f"{v}^{e}" for v, e in factors if e]
    return "*".join(parts) if parts else "1"


def karras_equations(qc: QcClass) -> EquationPair:
    return EquationPair("karras", (2 * qc.a, 2 * qc.d))


def relation_matrix(qc: QcClass) -> IntMatrix:
    """Abelianized presentation of the link group; rows are relations in X1, Y1, X2, Y2."""
    a, b, c, d = qc.entries
    return IntMatrix([
        [0, 2, 0, 0],
        [0, 0, 0, 2],
        [2 * a, c, -2, 0],
        [2 * b, d, 0, -1],
    ])


def abelianization_order(qc: QcClass) -> tuple[IntMatrix, FiniteAbelianGroup]:
    R = relation_matrix(qc)
    rank, group = abelian_quotient(R)
    assert rank == 0 and det(R) == -16 * qc.b
    assert group.order == 16 * qc.b
    return R, group


def z_action_matrix(qc: QcClass) -> UniMat2:
    """Action of ``z = x1 x2`` on the lattice spanned by ``x1^(4b)``, ``y1^2``."""
    a, b, c, d = qc.entries
    s = a * d + b * c
    Z = UniMat2(s, 2 * a, 2 * b * c * d, s)
    U = UniMat2(0, -1, 1, d)
    assert Z.det == 1 and Z.trace == 2 * s
    assert U.inverse() @ Z @ U == (M(2 * a) @ M(2 * d)).inverse()
    return Z


def explicit_uac_cycle(a: int, d: int) -> CuspCycle:
    """Closed form of the cover cycle: four strings of 2's, or two when a or d is 1."""
    if a == 1 and d == 1:
        raise CuspError("a = d = 1 cannot occur for a positive unimodular matrix")
    if a == 1 or d == 1:
        m = max(a, d)
        half = (4,) + (2,) * (2 * m - 3)
        return CuspCycle(half * 2)
    half = (3,) + (2,) * (2 * a - 3) + (3,) + (2,) * (2 * d - 3)
    return CuspCycle(half * 2)


@dataclass(frozen=True)
class UacResult:
    qc: QcClass
    degree: int
    cycle: CuspCycle
    equations: EquationPair
    z_matrix: UniMat2
    abelianization: FiniteAbelianGroup


def uac_cycle(qc: QcClass) -> UacResult:
    """Universal abelian cover: the double (in the circle direction) of the dual of ``[2a, 2d]``."""
    a, b, c, d = qc.entries
    derived = double_cover_cycle(dual_cusp(CuspCycle((2 * a, 2 * d))))
    explicit = explicit_uac_cycle(a, d)
    if derived != explicit:
        raise CuspError(f"derived cycle {derived} disagrees with closed form {explicit}")
    _, group = abelianization_order(qc)
    Z = z_action_matrix(qc)
    assert is_complete_intersection(explicit) and explicit.excess() == 4
    assert monodromy(explicit).trace == 4 * (a * d + b * c) ** 2 - 2 == (Z @ Z).trace
    return UacResult(qc, 16 * b, explicit, karras_equations(qc), Z, group)


def double_cover_weights(es) -> tuple[int, ...]:
    es = tuple(es)
    return (2 * es[0] - 2,) + es[1:-1] + (2 * es[-1] - 2,) + es[-2:0:-1]


def cusp_double_cover(qc: QcClass) -> tuple[CuspCycle, UniMat2]:
    """Canonical double cover of the quotient-cusp by a cusp."""
    a, b, c, d = qc.entries
    es = qc.e_sequence()
    C = CuspCycle(double_cover_weights(es))
    P = UniMat2(d, b, c, a) @ qc.matrix()
    assert P == UniMat2(a * d + b * c, 2 * b * d, 2 * a * c, a * d + b * c)
    assert monodromy(C).trace == P.trace == 2 * (a * d + b * c)
    return C, P


def v_cover_pre_blowdown(g: QuotientCuspGraph) -> WeightedGraph:
    """Branched double cover for ``v``: the chain mirrored about a ``-2 e_k`` vertex with two ``-1`` leaves."""
    es = g.chain
    chain = list(es[:-1]) + [2 * es[-1]] + list(es[-2::-1])
    n = len(chain)
    centre = len(es) - 1
    weights = [-e for e in chain]
    edges = [(i, i + 1) for i in range(n - 1)]
    for end in (0, n - 1):
        for _ in range(2):
            weights.append(-2)
            edges.append((len(weights) - 1, end))
    for _ in range(2):
        weights.append(-1)
        edges.append((len(weights) - 1, centre))
    return WeightedGraph(tuple(weights), tuple(edges))


def order_two_covers(g: QuotientCuspGraph) -> tuple[QuotientCuspGraph, QuotientCuspGraph, CuspCycle]:
    """Double covers for ``v``, ``w`` and ``v + w``.

    The ``v`` cover comes from blowing down the branched cover and is checked
    against the closed form; the ``w`` cover is its mirror image.
    """
    es = g.chain
    if g.degenerate:
        raise InvalidSequence("order-two covers need a chain of length >= 2")
    v_closed = QuotientCuspGraph(es[:-1] + (2 * es[-1] - 2,) + es[-2::-1])
    v_cover = as_quotient_cusp(blow_down(v_cover_pre_blowdown(g)))
    if v_cover != v_closed:
        raise CuspError(f"blow-down gives {v_cover}, closed form {v_closed}")
    w_cover = QuotientCuspGraph(es[:0:-1] + (2 * es[0] - 2,) + es[1:])
    vw_cover = CuspCycle(double_cover_weights(es))
    return v_cover, w_cover, vw_cover
