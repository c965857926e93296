import random

import pytest

from helpers import all_qc, random_qc
from quotcusp.cyclotomic import (
    CiExponents,
    admissible_exponents,
    b_odd_subgroup,
    build_group,
    character_check,
    character_violation,
    check_relations,
    eta_character,
    fixed_point_census,
    group_structure,
    normal_form,
    subgroup_structure,
    vadd,
)
from quotcusp.errors import BEven, InvalidExponents, NotInGroup
from quotcusp.unimodular import QcClass


def G_of(*e):
    return build_group(QcClass(*e))


def test_build_examples():
    G = G_of(2, 1, 1, 1)
    assert G.n == 4 and G.S(1) == (0, 2, 1, 1) and G.group.order == 16
    assert G_of(2, 1, 3, 2).group.order == 16
    assert G_of(3, 2, 4, 3).group.order == 32


def test_normal_form_examples():
    G = G_of(2, 1, 1, 1)
    assert normal_form(G, (0, 0, 0, 0)) == (0, 0, 0)
    assert normal_form(G, G.T) == (0, 1, 0)
    S1, S3, T = G.S(1), G.S(3), G.T
    assert vadd(S3, S3, 4) == vadd(vadd(S1, S1, 4), T, 4)
    with pytest.raises(NotInGroup):
        normal_form(G, (1, 0, 0, 0))


def test_structure_examples():
    assert group_structure(G_of(2, 1, 1, 1)).invariant_factors == (4, 4)
    assert group_structure(G_of(3, 4, 2, 3)).invariant_factors == (2, 2, 16)


def test_census_examples():
    assert {f.element for f in fixed_point_census(G_of(2, 1, 1, 1))} == {(2, 2, 0, 0), (0, 0, 2, 2)}
    cen = fixed_point_census(G_of(3, 4, 2, 3))
    assert len(cen) == 6 and all(sorted(f.element) == [0, 0, 8, 8] for f in cen)
    assert all(any(f.element) for f in cen)


def test_character_examples():
    G = G_of(2, 1, 1, 1)
    assert character_check(G, CiExponents(1, 3, 1, 1))
    # bypass validation to break the parity constraint
    assert not character_check(G, CiExponents(2, 2, 1, 1))
    assert "S" in character_violation(G, CiExponents(2, 2, 1, 1))
    with pytest.raises(InvalidExponents):
        CiExponents.validated(QcClass(2, 1, 1, 1), (2, 2, 1, 1))
    assert character_check(G_of(2, 1, 3, 2), CiExponents(1, 3, 1, 3))


def test_eta_examples():
    for e in [(2, 1, 1, 1), (3, 4, 2, 3), (2, 3, 1, 2)]:
        G = G_of(*e)
        eta = eta_character(G)
        assert eta[G.S(1)] == 2 * G.b and eta[(0, 0, 0, 0)] == 0 and eta[G.T] == 0


def test_admissible_examples():
    assert [c.as_tuple() for c in admissible_exponents(QcClass(2, 1, 1, 1))] == [(1, 3, 1, 1), (3, 1, 1, 1)]
    assert len(admissible_exponents(QcClass(2, 1, 3, 2))) == 4
    ad = admissible_exponents(QcClass(3, 4, 2, 3))
    assert {c.alpha for c in ad} == {0, 2, 4, 6} == {c.gamma for c in ad}


def test_b_odd_examples():
    G = G_of(2, 1, 1, 1)
    assert b_odd_subgroup(G).elements == G.group.elements
    G = G_of(2, 3, 1, 2)
    sub = b_odd_subgroup(G)
    assert sub.order == 16 and G.group.order == 48
    assert subgroup_structure(sub) == group_structure(G_of(2, 1, 1, 1))
    with pytest.raises(BEven):
        b_odd_subgroup(G_of(3, 2, 4, 3))


def test_b_odd_parity_twin_even_c():
    # b odd, c even: compare with a b = 1 group with c even
    G = G_of(3, 1, 8, 3)
    twin = G_of(3, 1, 2, 1)
    assert G.qc.c % 2 == 0 == twin.qc.c % 2
    assert subgroup_structure(b_odd_subgroup(G)) == group_structure(twin)


def test_relations_exhaustive_small():
    for qc in all_qc(9):
        G = build_group(qc)
        assert all(check_relations(G).values())
        forms = {normal_form(G, g) for g in G.group.elements}
        assert forms == {(j, k, l) for j in range(G.n) for k in (0, 1) for l in (0, 1)}


def test_eta_homomorphism_random():
    rng = random.Random(51)
    for _ in range(30):
        G = build_group(random_qc(rng, bound=12))
        eta = eta_character(G)
        els = list(G.group.elements)
        for _ in range(50):
            g, h = rng.choice(els), rng.choice(els)
            assert eta[vadd(g, h, G.n)] == (eta[g] + eta[h]) % G.n
        assert set(eta.values()) == {0, 2 * G.b}
        assert eta[G.S(3)] == 2 * G.b


def test_fixed_planes_only_origin():
    # points off the origin need c even and alpha*beta = gamma*delta = 0
    for qc in all_qc(8):
        G = build_group(qc)
        for ce in admissible_exponents(qc):
            for f in fixed_point_census(G, ce):
                if not f.origin_only:
                    assert qc.c % 2 == 0
                    assert ce.alpha * ce.beta == 0 and ce.gamma * ce.delta == 0


def test_broken_parity_always_fails():
    rng = random.Random(52)
    for _ in range(30):
        qc = random_qc(rng, bound=12)
        G = build_group(qc)
        ce = admissible_exponents(qc)[0]
        bad = CiExponents(ce.alpha + 1, ce.beta - 1, ce.gamma, ce.delta)
        assert bad.violations(qc)
        assert not character_check(G, bad)
