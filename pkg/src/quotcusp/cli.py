"""``cuspcli``: command-line front end.

Matrices are given row-major as ``a,b,c,d``; cycles and chains as positive
weights ``e1,e2,...`` (the resolution weights are their negatives).  Output
is JSON with sorted keys unless a subcommand says otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable

from . import abelian_covers as ac
from . import cusp_graphs as cg
from . import cyclotomic as cy
from . import discriminant as dc
from .errors import CuspError
from .exact_core import FiniteAbelianGroup
from .unimodular import (
    QcClass,
    UniMat2,
    b_from_e,
    build_B,
    classify_largest,
    e_from_b,
    factor_positive,
    validate_eseq,
)

SAFE_INT = 2**53 - 1
EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 2, 64


class Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise Usage(message)


# -- serialization -------------------------------------------------------------


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) > SAFE_INT else x
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else jsonable(x.numerator)
    if isinstance(x, UniMat2):
        return jsonable(x.tolist())
    if isinstance(x, cg.CuspCycle):
        return jsonable(list(x.weights))
    if isinstance(x, cg.QuotientCuspGraph):
        return jsonable(list(x.chain))
    if isinstance(x, FiniteAbelianGroup):
        return {"invariant_factors": jsonable(list(x.invariant_factors)), "order": jsonable(x.order), "name": str(x)}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dump(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True)


# -- argument parsing ----------------------------------------------------------


def ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise CuspError(f"expected comma-separated integers, got {text!r}") from None


def fractions(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(t) for t in text.split(",") if t.strip())
    except (ValueError, ZeroDivisionError):
        raise CuspError(f"expected comma-separated rationals, got {text!r}") from None


def matrix(text: str) -> UniMat2:
    return UniMat2.from_flat(ints(text))


def qc_arg(text: str) -> QcClass:
    e = ints(text)
    if len(e) != 4:
        raise CuspError(f"a classifying matrix needs 4 entries, got {len(e)}")
    return QcClass(*e)


def cycle_arg(text: str) -> cg.CuspCycle:
    return cg.CuspCycle(ints(text))


def lattice_arg(text: str) -> dc.Lattice2:
    return dc.Lattice2.from_flat(fractions(text))


# -- subcommands ---------------------------------------------------------------


def cmd_factor(ns):
    B = matrix(ns.matrix)
    bs = factor_positive(B)
    return {"b": bs, "e": e_from_b(bs), "largest": classify_largest(B).value}


def cmd_build(ns):
    es = validate_eseq(ints(ns.e))
    B = build_B(b_from_e(es))
    return {"b": b_from_e(es), "e": es, "matrix": B}


def cmd_monodromy(ns):
    C = cycle_arg(ns.cycle)
    A = cg.monodromy(C)
    return {"cycle": C, "matrix": A, "trace": A.trace}


def cmd_dual(ns):
    C = cycle_arg(ns.cycle)
    return {"cycle": C, "dual": cg.dual_cusp(C)}


def cmd_is_ci(ns):
    C = cycle_arg(ns.cycle)
    return {"ci": cg.is_complete_intersection(C), "sum": C.excess()}


def cmd_reduce(ns):
    A = matrix(ns.matrix)
    C, U = cg.reduce_to_cycle(A)
    return {"cycle": C, "conjugator": U}


def cmd_uac(ns):
    r = ac.uac_cycle(qc_arg(ns.qc))
    return {
        "qc": r.qc.entries,
        "degree": r.degree,
        "cycle": r.cycle,
        "equations": r.equations.render(),
        "z_matrix": r.z_matrix,
        "abelianization": r.abelianization,
    }


def cmd_double_cover(ns):
    qc = qc_arg(ns.qc)
    C, P = ac.cusp_double_cover(qc)
    return {"qc": qc.entries, "e": qc.e_sequence(), "cycle": C, "matrix": P}


def cmd_covers2(ns):
    g = cg.QuotientCuspGraph(validate_eseq(ints(ns.e)))
    v, w, vw = ac.order_two_covers(g)
    return {"e": g.chain, "v_cover": v, "w_cover": w, "vw_cover": vw}


def _discriminant_report(D: dc.DiscriminantData) -> dict:
    gens = D.generators
    table = [[D.pairing(x, y) for y in gens] for x in gens]
    return {
        "source": D.source,
        "group": D.group,
        "order": D.order,
        "generators": gens,
        "linking": table,
        "nonsingular": D.is_nonsingular(),
        "symmetric": D.is_symmetric(),
    }


def cmd_discriminant(ns):
    if ns.cycle is not None:
        C = cycle_arg(ns.cycle)
        out = _discriminant_report(dc.discriminant_of_graph(C))
        out["self_dual"] = cg.dual_cusp(C) == C
        out["ci"] = cg.is_complete_intersection(C)
        return out
    if ns.qc is not None:
        qc = qc_arg(ns.qc)
        return _discriminant_report(dc.discriminant_of_graph(cg.QuotientCuspGraph(qc.e_sequence())))
    return _discriminant_report(dc.discriminant_of_monodromy(matrix(ns.matrix)))


def cmd_complement(ns):
    A, W = matrix(ns.matrix), lattice_arg(ns.lattice)
    Wp = dc.orthogonal_complement(A, W)
    return {
        "complement": Wp.flat(),
        "subgroup_order": dc.subgroup_order(A, W),
        "complement_order": dc.subgroup_order(A, Wp),
    }


def cmd_duality_check(ns):
    r = dc.verify_mutual_duality(matrix(ns.matrix), lattice_arg(ns.lattice))
    return {
        "cover": r.cover,
        "dual_cover": r.dual_cover,
        "subgroup_order": r.subgroup_order,
        "complement_order": r.complement_order,
        "group_order": r.group_order,
        "passed": r.passed,
    }


def cmd_hypersurface(ns):
    C = dc.hypersurface_cover(matrix(ns.matrix))
    return {"cycle": C, "ci": cg.is_complete_intersection(C)}


def _group_report(qc: QcClass, exps) -> dict:
    G = cy.build_group(qc)
    ce = cy.CiExponents.validated(qc, exps) if exps is not None else None
    admissible = cy.admissible_exponents(qc)
    out = {
        "qc": qc.entries,
        "modulus": G.n,
        "generators": {f"S{i}": G.S(i) for i in range(1, 5)} | {"T": G.T},
        "order": G.group.order,
        "structure": cy.group_structure(G),
        "census": [
            {"element": f.element, "fixed_plane": "".join(f.fixed_plane), "origin_only": f.origin_only}
            for f in cy.fixed_point_census(G, ce)
        ],
        "eta": {",".join(map(str, g)): e for g, e in sorted(cy.eta_character(G).items())},
        "admissible": [c.as_tuple() for c in admissible],
    }
    if ce is not None:
        out["exponents"] = ce.as_tuple()
        out["character_check"] = cy.character_check(G, ce)
        out["equations"] = ac.EquationPair("diagonal", ce.as_tuple()).render()
    return out


def cmd_group(ns):
    return _group_report(qc_arg(ns.qc), ints(ns.exponents) if ns.exponents else None)


def _check(name: str, fn: Callable[[], object]) -> dict:
    try:
        witness = fn()
        ok = bool(witness.pop("passed")) if isinstance(witness, dict) else bool(witness)
        return {"name": name, "passed": ok, "witness": witness if isinstance(witness, dict) else None}
    except Exception as exc:  # a failing check must not stop the others
        return {"name": name, "passed": False, "witness": {"error": f"{type(exc).__name__}: {exc}"}}


def verify(qc: QcClass) -> dict:
    a, b, c, d = qc.entries
    g = cg.QuotientCuspGraph(qc.e_sequence())

    def triple():
        _, ab = ac.abelianization_order(qc)
        disc = dc.discriminant_of_graph(g).order
        grp = cy.build_group(qc).group.order
        return {"abelianization": ab.order, "discriminant": disc, "group": grp, "passed": ab.order == disc == grp == 16 * b}

    def trace_oracle():
        r = ac.uac_cycle(qc)
        t = cg.monodromy(r.cycle).trace
        return {"trace": t, "expected": 4 * (a * d + b * c) ** 2 - 2, "passed": t == 4 * (a * d + b * c) ** 2 - 2}

    def ci_sum():
        C = ac.uac_cycle(qc).cycle
        return {"cycle": C, "sum": C.excess(), "passed": C.excess() == 4}

    def involution():
        C, _ = ac.cusp_double_cover(qc)
        D = cg.dual_cusp(C)
        return {"cycle": C, "dual": D, "passed": cg.dual_cusp(D) == C}

    def mutual():
        C, _ = ac.cusp_double_cover(qc)
        A = cg.monodromy(C)
        r = dc.verify_mutual_duality(A, dc.Lattice2.standard())
        k = dc.klein_subgroup_check(g)
        return {"cover": r.cover, "dual_cover": r.dual_cover, "klein_quotient": k.quotient_order,
                "passed": r.passed and k.passed}

    def census():
        G = cy.build_group(qc)
        els = [f.element for f in cy.fixed_point_census(G)]
        return {"elements": els, "passed": len(els) == (6 if c % 2 == 0 else 2)}

    def characters():
        G = cy.build_group(qc)
        adm = cy.admissible_exponents(qc)
        eta = cy.eta_character(G)
        return {"admissible": len(adm),
                "passed": all(cy.character_check(G, ce) for ce in adm) and eta[G.S(1)] == 2 * b}

    checks = [
        _check("16b triple agreement", triple),
        _check("trace oracle", trace_oracle),
        _check("complete intersection sum", ci_sum),
        _check("duality involution", involution),
        _check("mutual duality", mutual),
        _check("fixed-point census", census),
        _check("character checks", characters),
    ]
    return {"qc": qc.entries, "checks": checks, "passed": all(ch["passed"] for ch in checks)}


def cmd_verify(ns):
    return verify(qc_arg(ns.qc))


def cmd_emit_dot(ns):
    if ns.cycle is not None:
        return cg.to_dot(cycle_arg(ns.cycle), "cusp")
    qc = qc_arg(ns.qc)
    return cg.to_dot(cg.QuotientCuspGraph(qc.e_sequence()), "quotient_cusp")


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cuspcli", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=fn)
        return sp

    add("factor", cmd_factor, "factor a positive unimodular matrix").add_argument("--matrix", required=True)
    add("build", cmd_build, "classifying matrix of a chain").add_argument("--e", required=True)
    add("monodromy", cmd_monodromy, "monodromy of a cycle").add_argument("--cycle", required=True)
    add("dual", cmd_dual, "dual cusp cycle").add_argument("--cycle", required=True)
    add("is-ci", cmd_is_ci, "complete intersection test").add_argument("--cycle", required=True)
    add("reduce", cmd_reduce, "cycle of a hyperbolic matrix").add_argument("--matrix", required=True)
    add("uac", cmd_uac, "universal abelian cover").add_argument("--qc", required=True)
    add("double-cover", cmd_double_cover, "double cover by a cusp").add_argument("--qc", required=True)
    add("covers2", cmd_covers2, "order-two covers").add_argument("--e", required=True)
    sp = add("discriminant", cmd_discriminant, "discriminant group and linking form")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--cycle")
    g.add_argument("--qc")
    g.add_argument("--matrix")
    for name, fn in (("complement", cmd_complement), ("duality-check", cmd_duality_check)):
        sp = add(name, fn, "orthogonal complement of a subgroup lattice")
        sp.add_argument("--matrix", required=True)
        sp.add_argument("--lattice", required=True, help="w11,w12,w21,w22: two basis vectors")
    add("hypersurface", cmd_hypersurface, "hypersurface cusp cover").add_argument("--matrix", required=True)
    sp = add("group", cmd_group, "diagonal group action")
    sp.add_argument("--qc", required=True)
    sp.add_argument("--exponents")
    add("verify", cmd_verify, "run every cross-check").add_argument("--qc", required=True)
    sp = add("emit-dot", cmd_emit_dot, "Graphviz output")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--cycle")
    g.add_argument("--qc")
    return p


def _glue_negative(argv: list[str]) -> list[str]:
    """Turn ``--matrix -1,2,...`` into ``--matrix=-1,2,...`` so argparse keeps the sign."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok.startswith("--") and "=" not in tok and nxt and nxt[:1] == "-" and nxt[1:2].isdigit():
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = _glue_negative(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except Usage as exc:
        print(dump({"error": {"code": "usage", "message": str(exc)}}), file=out)
        return EXIT_USAGE
    if ns.command is None:
        print(dump({"error": {"code": "usage", "message": "no subcommand given"}}), file=out)
        return EXIT_USAGE
    try:
        result = ns.func(ns)
    except CuspError as exc:
        print(dump({"error": {"code": exc.code, "message": str(exc)}}), file=out)
        return EXIT_INVALID
    if isinstance(result, str):
        out.write(result)
    else:
        print(dump(result), file=out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
