"""Shared random corpora; every generator is seeded so failures replay."""

import random

from quotcusp.unimodular import QcClass, UniMat2


def random_bseq(rng: random.Random, kmax=8, emax=9):
    while True:
        k = rng.randint(2, kmax)
        bs = [rng.randint(1, emax)] + [rng.randint(2, emax) for _ in range(k - 2)] + [rng.randint(1, emax)]
        if not (bs[0] == 1 and bs[-1] == 1 and all(b == 2 for b in bs[1:-1])):
            return tuple(bs)


def random_eseq(rng: random.Random, kmax=8, emax=6, kmin=2):
    while True:
        es = tuple(rng.randint(2, emax) for _ in range(rng.randint(kmin, kmax)))
        if any(e >= 3 for e in es):
            return es


def random_cycle(rng: random.Random, kmax=7, emax=7):
    """Cycle weights >= 2 with some weight >= 3; lengths 1 and 2 included."""
    k = rng.randint(1, kmax)
    while True:
        es = [rng.randint(2, emax) for _ in range(k)]
        if any(e >= 3 for e in es):
            return tuple(es)


def random_qc(rng: random.Random, bound=30) -> QcClass:
    """Positive unimodular [[a, b], [c, d]] with entries <= bound."""
    while True:
        a, d = rng.randint(1, bound), rng.randint(1, bound)
        n = a * d - 1
        if n < 1:
            continue
        divisors = [b for b in range(1, min(n, bound) + 1) if n % b == 0 and n // b <= bound]
        if divisors:
            b = rng.choice(divisors)
            return QcClass(a, b, n // b, d)


def all_qc(bound):
    out = []
    for a in range(1, bound + 1):
        for d in range(1, bound + 1):
            n = a * d - 1
            for b in range(1, n + 1):
                if n % b == 0 and n // b <= bound and b <= bound:
                    out.append(QcClass(a, b, n // b, d))
    return out


def random_hyperbolic(rng: random.Random, tmax=50) -> UniMat2:
    """SL(2,Z) matrix with trace in [3, tmax], conjugated by a random word."""
    from quotcusp.unimodular import M

    t = rng.randint(3, tmax)
    A = UniMat2(0, -1, 1, t)
    for _ in range(rng.randint(0, 4)):
        P = M(rng.randint(-3, 3))
        A = P.inverse() @ A @ P
    return A


def random_subgroup_lattice(rng: random.Random, A: UniMat2):
    """A lattice between (A - I) Z^2 and Z^2, spanned by (A - I) Z^2 and random vectors."""
    from quotcusp.discriminant import Lattice2
    from quotcusp.exact_core import IntMatrix, lattice_basis

    B = A - UniMat2.identity()
    cols = [(B.a, B.c), (B.b, B.d)]
    for _ in range(rng.randint(0, 2)):
        cols.append((rng.randint(-6, 6), rng.randint(-6, 6)))
    basis = lattice_basis(IntMatrix([[c[0] for c in cols], [c[1] for c in cols]]))
    return Lattice2.from_columns(basis.tolist())
