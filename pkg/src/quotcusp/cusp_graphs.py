"""Resolution graphs of cusps and quotient-cusps.

Weights are stored as positive integers ``e_i``; the plumbing weight of the
vertex is ``-e_i``.  :class:`WeightedGraph` is the exception: it stores the
signed plumbing weights directly because blow-downs pass through ``-1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CuspError, InvalidSequence, NoBlowdownableVertex, TraceTooSmall
from .exact_core import IntMatrix
from .unimodular import M, UniMat2, word_product


def _rotations(seq: tuple[int, ...]):
    for i in range(len(seq)):
        yield seq[i:] + seq[:i]


def canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation of ``seq`` or of its reversal."""
    seq = tuple(seq)
    return min(min(_rotations(seq)), min(_rotations(seq[::-1])))


@dataclass(frozen=True, eq=False)
class CuspCycle:
    """Cycle ``[-e_1, ..., -e_k]``, equal up to rotation and reversal.

    ``weights`` keeps the order it was built with; comparisons go through
    :meth:`canonical`.
    """

    weights: tuple[int, ...]

    def __post_init__(self):
        ws = tuple(int(e) for e in self.weights)
        if not ws:
            raise InvalidSequence("a cusp cycle needs at least one vertex")
        if any(e < 2 for e in ws):
            raise InvalidSequence(f"cycle weights must be >= 2: {ws}")
        if all(e == 2 for e in ws):
            raise InvalidSequence(f"some cycle weight must be >= 3: {ws}")
        object.__setattr__(self, "weights", ws)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def canonical(self) -> tuple[int, ...]:
        return canonical_cycle(self.weights)

    def __eq__(self, other):
        if isinstance(other, CuspCycle):
            return self.canonical() == other.canonical()
        return NotImplemented

    def __hash__(self):
        return hash(self.canonical())

    def is_rotation_of(self, other: CuspCycle) -> bool:
        return len(self) == len(other) and self.weights in set(_rotations(other.weights))

    def excess(self) -> int:
        """``sum(e_i - 2)``: the length of the dual cycle."""
        return sum(e - 2 for e in self.weights)

    def __repr__(self):
        return f"CuspCycle({list(self.weights)})"


@dataclass(frozen=True, eq=False)
class QuotientCuspGraph:
    """Chain ``e_1..e_k`` with two ``-2`` leaves hanging off each end.

    ``k == 1`` only arises for covers built internally and is flagged by
    :attr:`degenerate`.
    """

    chain: tuple[int, ...]
    degenerate: bool = field(default=False, compare=False)

    def __post_init__(self):
        es = tuple(int(e) for e in self.chain)
        if not es:
            raise InvalidSequence("empty chain")
        if any(e < 2 for e in es):
            raise InvalidSequence(f"chain weights must be >= 2: {es}")
        if all(e == 2 for e in es):
            raise InvalidSequence(f"some chain weight must be >= 3: {es}")
        object.__setattr__(self, "chain", es)
        object.__setattr__(self, "degenerate", len(es) < 2)

    def canonical(self) -> tuple[int, ...]:
        return min(self.chain, self.chain[::-1])

    def __eq__(self, other):
        if isinstance(other, QuotientCuspGraph):
            return self.canonical() == other.canonical()
        return NotImplemented

    def __hash__(self):
        return hash(self.canonical())

    def __len__(self):
        return len(self.chain)

    def vertex_count(self) -> int:
        return len(self.chain) + 4

    def __repr__(self):
        return f"QuotientCuspGraph({list(self.chain)})"


@dataclass(frozen=True)
class WeightedGraph:
    """Plumbing graph with signed integer weights; multi-edges allowed."""

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "edges", tuple((int(i), int(j)) for i, j in self.edges))
        n = len(self.weights)
        for i, j in self.edges:
            if not (0 <= i < n and 0 <= j < n):
                raise CuspError(f"edge ({i}, {j}) out of range")
        if n and not self._connected():
            raise CuspError("plumbing graph must be connected")

    def _connected(self) -> bool:
        seen, stack = {0}, [0]
        adj = self.adjacency()
        while stack:
            for j in adj[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(self.weights)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.weights]
        for i, j in self.edges:
            adj[i].append(j)
            if i != j:
                adj[j].append(i)
            else:
                adj[i].append(i)
        return adj

    def valence(self, v: int) -> int:
        return len(self.adjacency()[v])


# -- cycles -------------------------------------------------------------------


def as_cycle(c) -> CuspCycle:
    return c if isinstance(c, CuspCycle) else CuspCycle(tuple(c))


def monodromy(C) -> UniMat2:
    """``M(e_k) @ ... @ M(e_1)`` for the cycle ``[e_1, ..., e_k]``."""
    A = word_product(as_cycle(C).weights)
    assert A.det == 1 and A.trace >= 3, A
    return A


def dual_cusp(C) -> CuspCycle:
    """Swap weights >= 3 with strings of 2's.

    A vertex ``e >= 3`` becomes ``e - 3`` twos and a run of ``r`` twos between
    two heavy vertices becomes a single vertex of weight ``r + 3``.
    """
    ws = as_cycle(C).weights
    heavy = [i for i, e in enumerate(ws) if e >= 3]
    k = len(ws)
    out: list[int] = []
    for n, i in enumerate(heavy):
        prev = heavy[n - 1]
        gap = (i - prev - 1) % k if len(heavy) > 1 else k - 1
        out.append(gap + 3)
        out.extend([2] * (ws[i] - 3))
    return CuspCycle(tuple(out))


def is_complete_intersection(C) -> bool:
    return as_cycle(C).excess() <= 4


def double_cover_cycle(C) -> CuspCycle:
    ws = as_cycle(C).weights
    return CuspCycle(ws + ws)


def _cycle_intersection_matrix(ws: tuple[int, ...]) -> IntMatrix:
    k = len(ws)
    if k == 1:
        return IntMatrix([[-ws[0] + 2]])
    S = [[0] * k for _ in range(k)]
    for i, e in enumerate(ws):
        S[i][i] = -e
        j = (i + 1) % k
        S[i][j] += 1
        S[j][i] += 1
    if k == 2:
        # two edges join the pair; the loop above already counted both
        assert S[0][1] == 2
    return IntMatrix(S)


def quotient_cusp_weighted_graph(g: QuotientCuspGraph) -> WeightedGraph:
    """Chain vertices ``0..k-1``, then leaves at the ``e_1`` end, then at the ``e_k`` end."""
    k = len(g.chain)
    weights = [-e for e in g.chain] + [-2] * 4
    edges = [(i, i + 1) for i in range(k - 1)]
    edges += [(k, 0), (k + 1, 0), (k + 2, k - 1), (k + 3, k - 1)]
    return WeightedGraph(tuple(weights), tuple(edges))


def cycle_weighted_graph(C) -> WeightedGraph:
    ws = as_cycle(C).weights
    k = len(ws)
    if k == 1:
        return WeightedGraph((-ws[0],), ((0, 0),))
    edges = [(i, (i + 1) % k) for i in range(k)]
    return WeightedGraph(tuple(-e for e in ws), tuple(edges))


def graph_intersection_matrix(g: WeightedGraph) -> IntMatrix:
    """Diagonal = weight (+2 per loop), off-diagonal = number of edges."""
    n = len(g.weights)
    S = [[0] * n for _ in range(n)]
    for i, w in enumerate(g.weights):
        S[i][i] = w
    for i, j in g.edges:
        if i == j:
            S[i][i] += 2
        else:
            S[i][j] += 1
            S[j][i] += 1
    return IntMatrix(S)


def intersection_matrix(g) -> IntMatrix:
    if isinstance(g, QuotientCuspGraph):
        return graph_intersection_matrix(quotient_cusp_weighted_graph(g))
    if isinstance(g, WeightedGraph):
        return graph_intersection_matrix(g)
    return _cycle_intersection_matrix(as_cycle(g).weights)


# -- blow-downs -----------------------------------------------------------------


def _blow_down_once(g: WeightedGraph, v: int) -> WeightedGraph:
    adj = g.adjacency()
    nbrs = adj[v]
    weights = list(g.weights)
    for u in nbrs:
        weights[u] += 1
    edges = [e for e in g.edges if v not in e]
    if len(nbrs) == 2:
        edges.append((nbrs[0], nbrs[1]))
    keep = [i for i in range(len(weights)) if i != v]
    index = {old: new for new, old in enumerate(keep)}
    return WeightedGraph(
        tuple(weights[i] for i in keep),
        tuple((index[i], index[j]) for i, j in edges),
    )


def blowdownable(g: WeightedGraph) -> list[int]:
    adj = g.adjacency()
    return [
        v for v, w in enumerate(g.weights)
        if w == -1 and len(adj[v]) <= 2 and v not in adj[v] and len(g.weights) > 1
    ]


def blow_down(g: WeightedGraph, require_progress: bool = False) -> WeightedGraph:
    """Repeatedly contract ``-1`` vertices of valence at most 2."""
    if require_progress and not blowdownable(g):
        raise NoBlowdownableVertex("no -1 vertex of valence <= 2")
    while True:
        cands = blowdownable(g)
        if not cands:
            return g
        g = _blow_down_once(g, cands[0])


def as_quotient_cusp(g: WeightedGraph) -> QuotientCuspGraph:
    """Read a quotient-cusp graph back out of a plumbing tree."""
    adj = g.adjacency()
    n = len(g.weights)
    if len(g.edges) != n - 1:
        raise CuspError("not a tree")
    leaves = {v for v in range(n) if len(adj[v]) == 1 and g.weights[v] == -2}
    core = [v for v in range(n) if v not in leaves]
    if len(core) == 1:
        (v,) = core
        if len(adj[v]) != 4:
            raise CuspError("star centre must carry four leaves")
        return QuotientCuspGraph((-g.weights[v],))
    ends = [v for v in core if sum(1 for u in adj[v] if u in leaves) == 2]
    if len(ends) != 2 or len(leaves) != 4:
        raise CuspError("graph is not a chain with two leaves at each end")
    chain, prev, cur = [ends[0]], None, ends[0]
    while cur != ends[1]:
        nxt = [u for u in adj[cur] if u not in leaves and u != prev]
        if len(nxt) != 1:
            raise CuspError("core of the graph is not a path")
        prev, cur = cur, nxt[0]
        chain.append(cur)
    if len(chain) != len(core):
        raise CuspError("core of the graph is not a path")
    return QuotientCuspGraph(tuple(-g.weights[v] for v in chain))


# -- reduction of a monodromy matrix to a cycle -------------------------------


def _floor_quadratic(P: int, Q: int, D: int) -> int:
    """``floor((P + sqrt(D)) / Q)`` for non-square ``D > 0``."""
    s = math.isqrt(D)
    if Q > 0:
        return (P + s) // Q
    return (-P - s - 1) // (-Q)


def reduce_to_cycle(A: UniMat2) -> tuple[CuspCycle, UniMat2]:
    """Cycle ``C`` and conjugator ``U`` (det 1) with ``U^-1 A U == monodromy(C)``.

    Expands the fixed point of ``A`` that is attracting for ``A^-1`` as a
    minus continued fraction ``w -> 1 / (ceil(w) - w)``.  The expansion is
    eventually periodic; the period is the cycle and the pre-period builds the
    conjugator.  The returned weights are in period order, not canonicalized.
    """
    if A.det != 1:
        raise CuspError(f"monodromy must have det 1, got {A.det}")
    t = A.trace
    if t < 3:
        raise TraceTooSmall(f"trace {t} < 3")
    D = t * t - 4
    # fixed point in the coordinate u = -z, written (P + sqrt D) / Q
    P, Q = A.d - A.a, 2 * A.c
    if (D - P * P) % Q:
        raise CuspError("unexpected quadratic irrational normalization")
    seen: dict[tuple[int, int], int] = {}
    es: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(es)
        e = _floor_quadratic(P, Q, D) + 1
        es.append(e)
        P = e * Q - P
        Q = (P * P - D) // Q
    start = seen[(P, Q)]
    pre, period = es[:start], es[start:]
    G = word_product(pre)
    conj = G @ A @ G.inverse()
    prim = word_product(period)
    power, m = prim, 1
    while power.trace < conj.trace:
        power, m = power @ prim, m + 1
    if power != conj:
        raise CuspError(f"reduction failed for {A.tolist()}")
    C = CuspCycle(tuple(period * m))
    U = G.inverse()
    assert U.det == 1 and U.inverse() @ A @ U == monodromy(C)
    return C, U


# -- DOT output -----------------------------------------------------------------


def to_dot(g, name: str = "G") -> str:
    """Graphviz text; vertex label is the plumbing weight, vertex order is input order."""
    if isinstance(g, QuotientCuspGraph):
        wg, layout = quotient_cusp_weighted_graph(g), "dot"
    elif isinstance(g, WeightedGraph):
        wg, layout = g, "dot"
    else:
        wg, layout = cycle_weighted_graph(g), "circo"
    lines = [f"graph {name} {{", f"  layout={layout};", "  node [shape=circle];"]
    for i, w in enumerate(wg.weights):
        lines.append(f'  v{i} [label="{w}"];')
    for i, j in wg.edges:
        lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
