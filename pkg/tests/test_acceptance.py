"""Acceptance suite: twelve criteria, each exact, each reporting one PASS/FAIL line.

Run under pytest (lines are repeated in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import itertools
import random
import sys

from helpers import random_bseq, random_cycle, random_eseq, random_hyperbolic, random_qc, random_subgroup_lattice
from quotcusp.abelian_covers import abelianization_order, explicit_uac_cycle, order_two_covers, uac_cycle, v_cover_pre_blowdown
from quotcusp.cusp_graphs import (
    CuspCycle,
    QuotientCuspGraph,
    as_quotient_cusp,
    blow_down,
    double_cover_cycle,
    dual_cusp,
    intersection_matrix,
    is_complete_intersection,
    monodromy,
)
from quotcusp.cyclotomic import (
    admissible_exponents,
    build_group,
    character_check,
    eta_character,
    fixed_point_census,
    group_structure,
    normal_form,
)
from quotcusp.discriminant import (
    Lattice2,
    discriminant_of_graph,
    hypersurface_cover,
    klein_subgroup_check,
    verify_mutual_duality,
)
from quotcusp.exact_core import det
from quotcusp.unimodular import LargestCase, b_from_e, build_B, classify_largest, factor_positive, pasting_matrix

RESULTS: list[str] = []


def report(n: int, title: str, failures: list, total: int) -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"[{status}] criterion {n:2d}: {title} ({total - len(failures)}/{total})"
    if failures:
        line += f" first failure: {failures[0]!r}"
    RESULTS.append(line)
    print(line)
    assert not failures, line


def bseq_corpus():
    rng = random.Random(1001)
    return [random_bseq(rng, kmax=8, emax=9) for _ in range(500)]


def cycle_corpus():
    rng = random.Random(1004)
    out = [(3,), (7,), (2, 4), (5, 5), (2, 3)]
    while len(out) < 300:
        out.append(random_cycle(rng))
    return [CuspCycle(c) for c in out]


def qc_corpus(n=200, seed=1007):
    rng = random.Random(seed)
    return [random_qc(rng, bound=30) for _ in range(n)]


def test_01_factorization_bijection():
    bad = []
    corpus = bseq_corpus()
    for bs in corpus:
        B = build_B(bs)
        if not (B.is_positive() and B.det == 1 and factor_positive(B) == bs):
            bad.append(bs)
    report(1, "factor_positive inverts build_B", bad, len(corpus))


def test_02_largest_entry_table():
    table = {
        (True, True): LargestCase.BETA,
        (False, True): LargestCase.ALPHA,
        (True, False): LargestCase.DELTA,
        (False, False): LargestCase.GAMMA,
    }
    bad, corpus = [], bseq_corpus()
    for bs in corpus:
        B = build_B(bs)
        entries = {LargestCase.ALPHA: B.a, LargestCase.BETA: B.b, LargestCase.GAMMA: B.c, LargestCase.DELTA: B.d}
        expected = table[(bs[0] > 1, bs[-1] > 1)]
        strictly_largest = all(entries[expected] > v for k, v in entries.items() if k is not expected)
        if classify_largest(B) is not expected or not strictly_largest:
            bad.append(bs)
    report(2, "largest entry matches end flags", bad, len(corpus))


def test_03_pasting_identity():
    bad, total = [], 0
    for k in range(2, 9):
        for es in itertools.product(range(2, 7), repeat=k):
            if max(es) < 3:
                continue
            total += 1
            if pasting_matrix(es) != build_B(b_from_e(es)):
                bad.append(es)
    report(3, "pasting matrix equals classifying matrix, all k <= 8, e <= 6", bad, total)


def test_04_trace_law():
    bad, corpus = [], cycle_corpus()
    for C in corpus:
        if abs(det(intersection_matrix(C))) != monodromy(C).trace - 2:
            bad.append(C)
    assert any(len(C) == 1 for C in corpus) and any(len(C) == 2 for C in corpus)
    report(4, "|det S| = trace - 2", bad, len(corpus))


def test_05_dual_involution_and_length():
    bad, corpus = [], cycle_corpus()
    for C in corpus:
        D = dual_cusp(C)
        if dual_cusp(D) != C or len(D) != sum(e - 2 for e in C.weights):
            bad.append(C)
    report(5, "dual is an involution of length sum(e - 2)", bad, len(corpus))


def test_06_example_61():
    C = CuspCycle((2, 4, 2, 2, 5))
    D = discriminant_of_graph(C)
    checks = {
        "order 61": D.order == 61,
        "self-dual": dual_cusp(C) == C,
        "not CI": not is_complete_intersection(C),
    }
    report(6, "[2,4,2,2,5]: |D| = 61, self-dual, not CI", [k for k, v in checks.items() if not v], len(checks))


def test_07_universal_abelian_cover():
    bad, corpus = [], qc_corpus()
    for qc in corpus:
        a, b, c, d = qc.entries
        derived = double_cover_cycle(dual_cusp(CuspCycle((2 * a, 2 * d))))
        r = uac_cycle(qc)
        ok = (
            derived == explicit_uac_cycle(a, d) == r.cycle
            and r.cycle.excess() == 4
            and r.degree == 16 * b
            and monodromy(r.cycle).trace == 4 * (a * d + b * c) ** 2 - 2
        )
        if not ok:
            bad.append(qc.entries)
    report(7, "cover cycle, degree 16b, CI sum 4, trace 4(ad+bc)^2 - 2", bad, len(corpus))


def test_08_sixteen_b_triple():
    bad, corpus = [], qc_corpus()
    for qc in corpus:
        _, ab = abelianization_order(qc)
        disc = discriminant_of_graph(QuotientCuspGraph(qc.e_sequence())).order
        grp = build_group(qc).group.order
        if not (ab.order == disc == grp == 16 * qc.b):
            bad.append((qc.entries, ab.order, disc, grp))
    report(8, "abelianization = discriminant = |G| = 16b", bad, len(corpus))


def test_09_mutual_duality():
    rng = random.Random(1009)
    bad, total = [], 0
    for i in range(200):
        A = random_hyperbolic(rng, tmax=50)
        W = Lattice2.standard() if i % 5 == 0 else random_subgroup_lattice(rng, A)
        total += 1
        r = verify_mutual_duality(A, W)
        if not r.passed:
            bad.append((A, W))
        if i % 5 == 0 and r.dual_cover != dual_cusp(r.cover):
            bad.append(("discriminant cover", A))
    report(9, "covers for K and its annihilator are dual", bad, total)


def test_10_hypersurface():
    rng = random.Random(1010)
    bad = []
    for _ in range(100):
        A = random_hyperbolic(rng, tmax=50)
        C = hypersurface_cover(A)
        if C.weights != (3,) + (2,) * (A.trace - 3) or not is_complete_intersection(C):
            bad.append(A)
    report(10, "hypersurface cover [3, 2^(t-3)]", bad, 100)


def test_11_group_action():
    bad, corpus = [], qc_corpus(100, seed=1011)
    for qc in corpus:
        G = build_group(qc)
        n, b = G.n, G.b
        forms = {normal_form(G, g) for g in G.group.elements}
        if forms != {(j, k, l) for j in range(n) for k in (0, 1) for l in (0, 1)}:
            bad.append(("normal form", qc.entries))
        want = (2, 2, n) if qc.c % 2 == 0 else (4, n)
        if group_structure(G).invariant_factors != want:
            bad.append(("structure", qc.entries))
        census = {f.element for f in fixed_point_census(G)}
        h = 2 * b
        if qc.c % 2 == 0:
            ok = len(census) == 6 and all(sorted(g) == [0, 0, h, h] for g in census)
        else:
            ok = census == {(h, h, 0, 0), (0, 0, h, h)}
        if not ok:
            bad.append(("census", qc.entries))
        if not all(character_check(G, ce) for ce in admissible_exponents(qc)):
            bad.append(("characters", qc.entries))
        if eta_character(G)[G.S(1)] != h:
            bad.append(("eta", qc.entries))
    report(11, "normal form, structure, census, characters, eta(S1) = 2b", bad, len(corpus))


def test_12_order_two_covers():
    rng = random.Random(1012)
    bad = []
    for _ in range(100):
        es = random_eseq(rng, kmax=8, emax=7)
        g = QuotientCuspGraph(es)
        v, _, _ = order_two_covers(g)
        closed = QuotientCuspGraph(es[:-1] + (2 * es[-1] - 2,) + es[-2::-1])
        if as_quotient_cusp(blow_down(v_cover_pre_blowdown(g))) != closed or v != closed:
            bad.append(("blow-down", es))
        k = klein_subgroup_check(g)
        if not (k.passed and k.quotient_order == 4 * build_B(b_from_e(es)).b):
            bad.append(("klein", es))
    report(12, "v cover by blow-down; Klein subgroup self-orthogonal, |D/K| = 4b", bad, 100)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
