"""Diagonal group action on the complete intersection cusp.

Diagonal matrices ``[w^gx, w^gy, w^gu, w^gv]`` with ``w`` a primitive
``4b``-th root of unity are stored as exponent vectors mod ``4b``; ``-w^a`` is
the residue ``a + 2b``.  Nothing is ever evaluated numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import BEven, InvalidExponents, NotInGroup
from .exact_core import FiniteAbelianGroup, IntMatrix, lattice_basis, rat_inverse, snf
from .unimodular import QcClass

Vec = tuple[int, int, int, int]
COORDS = ("x", "y", "u", "v")


def vadd(g: Vec, h: Vec, n: int) -> Vec:
    return tuple((a + b) % n for a, b in zip(g, h))


def vscale(k: int, g: Vec, n: int) -> Vec:
    return tuple((k * a) % n for a in g)


def closure(gens: Iterable[Vec], n: int) -> frozenset:
    zero = (0, 0, 0, 0)
    seen, frontier = {zero}, [zero]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = vadd(x, g, n)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


@dataclass(frozen=True)
class ExponentGroup:
    modulus: int
    generators: tuple[Vec, ...]
    elements: frozenset = field(repr=False)

    @classmethod
    def generated(cls, gens: Sequence[Vec], n: int) -> ExponentGroup:
        gens = tuple(tuple(x % n for x in g) for g in gens)
        return cls(n, gens, closure(gens, n))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return tuple(x % self.modulus for x in g) in self.elements

    def element_order(self, g: Vec) -> int:
        k, x = 1, tuple(a % self.modulus for a in g)
        while any(x):
            x = vadd(x, g, self.modulus)
            k += 1
        return k


@dataclass(frozen=True)
class ActionGroup:
    """The group generated by S1..S4 for one classifying matrix."""

    qc: QcClass
    group: ExponentGroup

    @property
    def b(self) -> int:
        return self.qc.b

    @property
    def n(self) -> int:
        return 4 * self.qc.b

    def S(self, i: int) -> Vec:
        return self.group.generators[i - 1]

    @property
    def T(self) -> Vec:
        return vadd(self.S(1), vscale(-1, self.S(2), self.n), self.n)

    @property
    def minus_identity(self) -> Vec:
        h = 2 * self.b
        return (h, h, h, h)

    def combine(self, j: int, k: int, l: int) -> Vec:
        """``S1^j T^k S3^l``."""
        n = self.n
        return vadd(vadd(vscale(j, self.S(1), n), vscale(k, self.T, n), n), vscale(l, self.S(3), n), n)


def build_group(qc: QcClass) -> ActionGroup:
    a, b, c, d = qc.entries
    n, h = 4 * b, 2 * b
    gens = (
        (a + h, a, 1, 1),
        (a, a + h, 1, 1),
        (1, 1, d + h, d),
        (1, 1, d, d + h),
    )
    G = ActionGroup(qc, ExponentGroup.generated(gens, n))
    assert G.group.order == 16 * b, (qc, G.group.order)
    return G


def normal_form(G: ActionGroup, g: Sequence[int]) -> tuple[int, int, int]:
    """Unique ``(j, k, l)`` with ``S1^j T^k S3^l == g``.

    ``S1^j T^k S3^l = [(-1)^(j+k) w^(aj+l), (-1)^k w^(aj+l), (-1)^l w^(j+dl), w^(j+dl)]``:
    the last two entries fix ``l`` then ``j``, the second fixes ``k``.
    """
    n, h = G.n, 2 * G.b
    a, d = G.qc.a, G.qc.d
    gx, gy, gu, gv = (x % n for x in g)
    diff = (gu - gv) % n
    if diff not in (0, h):
        raise NotInGroup(f"{tuple(g)} is not in G")
    l = int(diff == h)
    j = (gv - d * l) % n
    rest = (gy - a * j - l) % n
    if rest not in (0, h):
        raise NotInGroup(f"{tuple(g)} is not in G")
    k = int(rest == h)
    if G.combine(j, k, l) != (gx, gy, gu, gv):
        raise NotInGroup(f"{tuple(g)} is not in G")
    return j, k, l


def check_relations(G: ActionGroup) -> dict[str, bool]:
    n, c, d = G.n, G.qc.c, G.qc.d
    S1, S2, S3, S4, T = G.S(1), G.S(2), G.S(3), G.S(4), G.T
    a = G.qc.a
    minus_i = vscale(2 * G.b, S1, n) if a % 2 else vadd(vscale(2 * G.b, S1, n), T, n)
    return {
        "T = [-1,-1,1,1]": T == (2 * G.b, 2 * G.b, 0, 0),
        "S2 = T S1": S2 == vadd(T, S1, n),
        "S4 = -T S3": S4 == vadd(vadd(G.minus_identity, T, n), S3, n),
        "S3^2 = S1^(2d) T^c": vscale(2, S3, n) == vadd(vscale(2 * d, S1, n), vscale(c, T, n), n),
        "-I in G": minus_i == G.minus_identity,
    }


def _invariant_factors(gens: Sequence[Vec], n: int) -> FiniteAbelianGroup:
    """Structure of the subgroup of ``(Z/n)^4`` generated by ``gens``.

    The lattice ``L = span(gens) + n Z^4`` has basis ``B``; the subgroup is
    ``L / n Z^4``, the cokernel of ``n B^-1``.
    """
    cols = [list(g) for g in gens] + [[n * int(i == j) for i in range(4)] for j in range(4)]
    basis = lattice_basis(IntMatrix([[col[i] for col in cols] for i in range(4)]))
    Binv = rat_inverse(basis)
    rel = IntMatrix([[int(n * x) for x in row] for row in Binv])
    return FiniteAbelianGroup.from_diagonal(snf(rel).d)


def group_structure(G: ActionGroup) -> FiniteAbelianGroup:
    """``C_4b x C_2 x C_2`` for even ``c``, ``C_4b x C_4`` for odd ``c``."""
    n, b, c, d = G.n, G.b, G.qc.c, G.qc.d
    structure = _invariant_factors(G.group.generators, n)
    S1, S3, T = G.S(1), G.S(3), G.T
    assert G.group.element_order(S1) == n
    if c % 2 == 0:
        assert structure.invariant_factors == (2, 2, n), structure
        third = vadd(vadd(vscale(-d, S1, n), vscale(c // 2, T, n), n), S3, n)
        assert third == (2 * b, 0, 2 * b, 0)
        assert G.group.element_order(T) == 2 and G.group.element_order(third) == 2
    else:
        assert structure.invariant_factors == (4, n), structure
        second = vadd(vscale(d, S1, n), vscale(-1, S3, n), n)
        assert G.group.element_order(second) == 4 and vscale(2, second, n) == T
    return structure


@dataclass(frozen=True)
class CiExponents:
    alpha: int
    beta: int
    gamma: int
    delta: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def violations(self, qc: QcClass) -> list[str]:
        al, be, ga, de = self.as_tuple()
        out = []
        if min(al, be, ga, de) < 0:
            out.append("exponents must be >= 0")
        if al + be != 2 * qc.a:
            out.append(f"alpha + beta = {al + be}, expected 2a = {2 * qc.a}")
        if ga + de != 2 * qc.d:
            out.append(f"gamma + delta = {ga + de}, expected 2d = {2 * qc.d}")
        if any((x - qc.c) % 2 for x in (al, be, ga, de)):
            out.append(f"exponents must all be congruent to c = {qc.c} mod 2")
        return out

    @classmethod
    def validated(cls, qc: QcClass, exps: Sequence[int]) -> CiExponents:
        ce = cls(*(int(x) for x in exps))
        bad = ce.violations(qc)
        if bad:
            raise InvalidExponents("; ".join(bad))
        return ce


def admissible_exponents(qc: QcClass) -> list[CiExponents]:
    a, c, d = qc.a, qc.c, qc.d
    out = [
        CiExponents(al, 2 * a - al, ga, 2 * d - ga)
        for al in range(c % 2, 2 * a + 1, 2)
        for ga in range(c % 2, 2 * d + 1, 2)
    ]
    assert out
    return out


def character_violation(G: ActionGroup, ce: CiExponents) -> str | None:
    """First generator that fails to scale an equation by a character, or None."""
    n = G.n
    al, be, ga, de = ce.as_tuple()
    for i, (gx, gy, gu, gv) in enumerate(G.group.generators, 1):
        f = {(2 * gx) % n, (2 * gy) % n, (al * gu + be * gv) % n}
        g = {(2 * gu) % n, (2 * gv) % n, (ga * gx + de * gy) % n}
        if len(f) != 1:
            return f"S{i} does not act on x^2 + y^2 - u^alpha v^beta by a character"
        if len(g) != 1:
            return f"S{i} does not act on u^2 + v^2 - x^gamma y^delta by a character"
    return None


def character_check(G: ActionGroup, ce: CiExponents) -> bool:
    return character_violation(G, ce) is None


def eta_character(G: ActionGroup) -> dict[Vec, int]:
    """Weight of ``dx ^ dy / (f_u g_v - f_v g_u)`` under each element, mod 4b."""
    n = G.n
    table = {g: (sum(g) - 2 * g[0] - 2 * g[2]) % n for g in G.group.elements}
    return table


# -- fixed points --------------------------------------------------------------


def _restrict(free: set[str], ce: CiExponents):
    """The two equations with every non-free coordinate set to zero.

    Each side is returned as ``None`` (identically zero), a frozenset of
    squared variables, or a dict ``{var: exponent}`` for a monomial.
    """
    al, be, ga, de = ce.as_tuple()

    def squares(vs):
        return frozenset(v for v in vs if v in free) or None

    def mono(pairs):
        out = {}
        for v, e in pairs:
            if e == 0:
                continue
            if v not in free:
                return None
            out[v] = e
        return out

    return [
        (squares(("x", "y")), mono((("u", al), ("v", be)))),
        (squares(("u", "v")), mono((("x", ga), ("y", de)))),
    ]


def _has_nonzero_solution(free: Sequence[str], ce: CiExponents) -> bool:
    """Case split on which free coordinates vanish.

    With the surviving coordinates all nonzero, a single square or a monomial
    never vanishes, so it cannot equal an identically zero side.  A sum of two
    squares equal to zero is solved by ``q = i p``; square or monomial equal
    to monomial is solved by setting every survivor to 1.
    """
    free = list(free)
    for mask in product((False, True), repeat=len(free)):
        alive = {v for v, keep in zip(free, mask) if keep}
        if not alive:
            continue
        eqs = _restrict(alive, ce)
        isotropic = both = 0
        ok = True
        for lhs, rhs in eqs:
            if lhs is None and rhs is None:
                continue
            if lhs is not None and rhs is not None:
                if len(lhs) == 2:
                    raise NotImplementedError("sum of two squares equal to a monomial")
                both += 1
            elif isinstance(lhs, frozenset) and len(lhs) == 2:
                isotropic += 1
            else:
                ok = False
                break
        if not ok:
            continue
        if isotropic and both:
            # never happens on a coordinate plane; refuse to guess
            raise NotImplementedError("isotropic equation mixed with a monomial equation")
        return True
    return False


@dataclass(frozen=True)
class FixedElement:
    element: Vec
    fixed_plane: tuple[str, ...]
    origin_only: bool | None


def fixed_point_census(G: ActionGroup, ce: CiExponents | None = None) -> list[FixedElement]:
    """Non-identity elements with at least two eigenvalues equal to 1."""
    out = []
    for g in sorted(G.group.elements):
        if not any(g):
            continue
        zeros = tuple(v for v, x in zip(COORDS, g) if x == 0)
        if len(zeros) < 2:
            continue
        origin_only = None if ce is None else not _has_nonzero_solution(zeros, ce)
        out.append(FixedElement(g, zeros, origin_only))
    h = 2 * G.b
    if G.qc.c % 2 == 0:
        assert len(out) == 6 and all(sorted(f.element) == [0, 0, h, h] for f in out)
    else:
        assert {f.element for f in out} == {(h, h, 0, 0), (0, 0, h, h)}
    return out


# -- odd b -----------------------------------------------------------------------


def structure_generators(G: ActionGroup) -> tuple[Vec, ...]:
    n, c, d = G.n, G.qc.c, G.qc.d
    if c % 2 == 0:
        return (G.T, (2 * G.b, 0, 2 * G.b, 0))
    return (vadd(vscale(d, G.S(1), n), vscale(-1, G.S(3), n), n),)


def b_odd_subgroup(G: ActionGroup) -> ExponentGroup:
    """Subgroup of order 16 generated by ``S1^b`` and the structure generators."""
    if G.b % 2 == 0:
        raise BEven(f"b = {G.b} is even")
    gens = (vscale(G.b, G.S(1), G.n),) + structure_generators(G)
    sub = ExponentGroup.generated(gens, G.n)
    assert sub.order == 16 and sub.elements <= G.group.elements
    return sub


def subgroup_structure(sub: ExponentGroup) -> FiniteAbelianGroup:
    return _invariant_factors(sub.generators, sub.modulus)
