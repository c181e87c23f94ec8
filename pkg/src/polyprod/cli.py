"""Command line front end.

Exit codes: 0 success, 1 bad input, 2 internal consistency failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import cube_oracle, decomposition, realmac_chain, spectral
from .graded_algebra.linalg import InvalidComplexError, coefficients
from .graded_algebra.pairdata import PRESETS, PairData, PairDataError, d1s0
from .simplicial import ComplexError, SimplicialComplex

COMMANDS = ("validate", "poincare", "decompose", "sr", "euler", "genus",
            "rmac-homology", "rmac-ring", "ss-run", "oracle-check")


class InputError(Exception):
    pass


class ConsistencyError(Exception):
    pass


# loading -----------------------------------------------------------------------

def load_complex(path: str) -> SimplicialComplex:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return SimplicialComplex.from_json(obj)
    except ComplexError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_pairs(path: str | None, preset: str | None) -> PairData:
    if preset:
        if preset not in PRESETS:
            raise InputError(f"unknown preset {preset!r}; choose from {', '.join(sorted(PRESETS))}")
        return PRESETS[preset]()
    if path is None:
        return d1s0()
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        data = PairData.from_json(obj)
    except PairDataError as exc:
        raise InputError(f"{path}: " + "; ".join(exc.issues)) from None
    issues = data.issues()
    if issues:
        raise InputError(f"{path}: " + "; ".join(issues))
    return data


# output helpers ------------------------------------------------------------------

def emit(obj, fmt: str, text: str | None = None, tex: str | None = None) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False))
    elif fmt == "tex" and tex is not None:
        print(tex)
    else:
        print(text if text is not None else json.dumps(obj, ensure_ascii=False))


def _tex_label(label: str) -> str:
    return label.replace("⊗", r"\otimes").replace("δ", r"\delta ")


def growth_table_text(T: spectral.GrowthTable) -> str:
    head, cells = T.as_rows()
    widths = [max(len(a), len(b)) for a, b in zip(head, cells)]
    lines = ["filtration  " + "  ".join(h.ljust(w) for h, w in zip(head, widths)),
             "            " + "  ".join(c.ljust(w) for c, w in zip(cells, widths))]
    lines = [l.rstrip() for l in lines]
    for a, b in T.differentials:
        lines.append(f"differential from filtration {a} to filtration {b}")
    return "\n".join(lines)


def growth_table_tex(T: spectral.GrowthTable) -> str:
    head, cells = T.as_rows()
    cols = "c" * (len(head) + 1)
    out = [r"$$\begin{array}{%s}" % cols,
           r"\mbox{filtration} & " + " & ".join(head) + r"\\",
           " & " + " & ".join(_tex_label(c) for c in cells),
           r"\end{array}$$"]
    for a, b in T.differentials:
        out.append(f"differential from filtration {a} to filtration {b}")
    return "\n".join(out)


def page_json(page: spectral.Page) -> dict:
    return {
        "r": page.r if page.r is not None else "infinity",
        "classes": [{"s": c.s, "t": c.t, "label": c.label} for c in page.classes],
        "differentials": [{"from": page.classes[a].label, "to": page.classes[b].label,
                           "s": [page.classes[a].s, page.classes[b].s], "coeff": str(c)}
                          for a, b, c in page.differentials],
    }


def page_text(page: spectral.Page) -> str:
    name = "E_inf" if page.r is None else f"E_{page.r}"
    lines = [f"{name}: {len(page.classes)} classes"]
    by_s: dict[int, list] = {}
    for c in page.classes:
        by_s.setdefault(c.s, []).append(c)
    for s in sorted(by_s):
        cells = ", ".join(f"{c.label} (t={c.t})" for c in by_s[s])
        lines.append(f"  filtration {s}: {cells}")
    for a, b, c in page.differentials:
        A, B = page.classes[a], page.classes[b]
        coeff = "" if c == 1 else f"{c}*"
        lines.append(f"  d_{page.r}: {A.label} -> {coeff}{B.label}  (filtration {A.s} to {B.s})")
    return "\n".join(lines)


# commands --------------------------------------------------------------------------

def cmd_validate(args) -> int:
    K = load_complex(args.complex)
    data = load_pairs(args.pairs, args.preset)
    data.for_m(K.m)
    obj = {"complex": K.to_json(), "f_vector": K.f_vector(), "ghost_vertices": K.ghost_vertices(),
           "minimal_nonfaces": [list(f) for f in K.minimal_nonfaces()], "pair_data": "valid"}
    emit(obj, args.format, f"valid: m={K.m}, {len(K.facets())} facets, f-vector {K.f_vector()}")
    return 0


def cmd_poincare(args) -> int:
    K = load_complex(args.complex)
    data = load_pairs(args.pairs, args.preset)
    P = decomposition.poincare(K, data, args.variant, args.coefficients, args.threads)
    emit({"poincare": str(P)}, args.format, str(P), f"${P.to_tex()}$")
    return 0


def cmd_decompose(args) -> int:
    K = load_complex(args.complex)
    data = load_pairs(args.pairs, args.preset)
    D = decomposition.decompose(K, data, args.variant, args.coefficients, args.threads, check=True)
    obj = D.to_json()
    lines = []
    for s in D.summands:
        lines.append(f"I={list(s.I)} sigma={list(s.sigma)} link_betti={s.link_betti} dims={s.dims}")
    lines.append(f"poincare {D.poincare}")
    tex = [r"\begin{array}{lll}", r"I & \sigma & \text{series}\\"]
    for s in D.summands:
        tex.append(r"\{%s\} & \{%s\} & %s\\" % (",".join(map(str, s.I)), ",".join(map(str, s.sigma)), s.dims.to_tex()))
    tex.append(r"\end{array}")
    tex.append(f"$P = {D.poincare.to_tex()}$")
    emit(obj, args.format, "\n".join(lines), "\n".join(tex))
    return 0


def cmd_sr(args) -> int:
    K = load_complex(args.complex)
    data = load_pairs(args.pairs, args.preset)
    try:
        sr = decomposition.sr_presentation(K, data)
    except decomposition.DecompositionError as exc:
        raise InputError(str(exc)) from None
    q = sr.quotient_series()
    if q != decomposition.poincare(K, data, "Z"):
        raise ConsistencyError("quotient dimensions differ from the summand count")
    lines = [f"generators: " + "; ".join(f"{i}: {', '.join(l for l, _ in g) or '-'}" for i, g in sr.generators.items())]
    for tau, monos in sr.relations:
        lines.append(f"relation on {list(tau)}: " + ", ".join(" ⊗ ".join(y) for y in monos))
    lines.append(f"quotient {q}")
    emit(sr.to_json(), args.format, "\n".join(lines))
    return 0


def cmd_euler(args) -> int:
    K = load_complex(args.complex)
    formula = realmac_chain.euler_characteristic(K)
    ck = realmac_chain.ck_cohomology(K).euler_characteristic()
    obj = {"formula": formula, "ck": ck}
    if K.m <= cube_oracle.max_m():
        obj["oracle"] = cube_oracle.CubicalComplex(K).euler_characteristic()
    if len(set(obj.values())) != 1:
        raise ConsistencyError(f"euler characteristics disagree: {obj}")
    emit(obj, args.format, f"chi {formula}")
    return 0


def cmd_genus(args) -> int:
    K = load_complex(args.complex)
    try:
        g = realmac_chain.genus_ngon(K)
    except realmac_chain.NotAPolygonError as exc:
        raise InputError(str(exc)) from None
    chi = realmac_chain.euler_characteristic(K)
    if chi != 2 - 2 * g:
        raise ConsistencyError(f"chi {chi} does not match genus {g}")
    emit({"genus": g, "chi": chi}, args.format, f"genus {g}, chi {chi}")
    return 0


def _rmac(args):
    K = load_complex(args.complex)
    coh = realmac_chain.ck_cohomology(K, args.coefficients)
    return K, coh


def cmd_rmac_homology(args) -> int:
    K, coh = _rmac(args)
    obj = coh.to_json()
    lines = []
    for d in obj:
        tors = "".join(f" + Z/{t}" for t in d["torsion"])
        lines.append(f"H^{d['degree']} rank {d['rank']}{tors}")
    emit(obj, args.format, "\n".join(lines))
    return 0


def cmd_rmac_ring(args) -> int:
    K, coh = _rmac(args)
    table = realmac_chain.cup_product_table(coh)
    obj = {"cohomology": coh.to_json(), "cup_products": table}
    lines = [f"H^{d['degree']} rank {d['rank']}" for d in obj["cohomology"]]
    for row in table:
        lines.append(f"[{row['left'][0]}.{row['left'][1]}] * [{row['right'][0]}.{row['right'][1]}] = "
                     + " + ".join(f"{c}*[{row['left'][0] + row['right'][0]}.{k}]" for k, c in row["product"].items()))
    emit(obj, args.format, "\n".join(lines))
    return 0


def cmd_ss_run(args) -> int:
    K = load_complex(args.complex)
    data = load_pairs(args.pairs, args.preset)
    if args.walk is not None:
        tables = spectral.growth_tables(spectral.filtration_steps(K, args.walk), data, args.variant)
        obj = [{"filtration": T.as_rows()[0], "classes": T.as_rows()[1],
                "differentials": [list(d) for d in T.differentials]} for T in tables]
        emit(obj, args.format, "\n\n".join(growth_table_text(T) for T in tables),
             "\n\n".join(growth_table_tex(T) for T in tables))
        return 0
    ss = spectral.SpectralSequence(K, data, args.variant)
    pages = ss.pages() if args.pages else []
    for p in pages:
        if not p.check_square_zero():
            raise ConsistencyError(f"d_{p.r} does not square to zero")
    einf = spectral.run_to_einfty(K, data, args.variant, check=args.check)
    expected = decomposition.poincare(K, data, args.variant)
    if einf.total != expected:
        raise ConsistencyError(f"E_inf total {einf.total} differs from the summand count {expected}")
    obj = {"pages": [page_json(p) for p in pages], "einfty": str(einf.total), "last_page": einf.last_page}
    text = [page_text(p) for p in pages] + [f"E_inf total {einf.total}"]
    emit(obj, args.format, "\n".join(text))
    return 0


def cmd_oracle_check(args) -> int:
    K = load_complex(args.complex)
    try:
        oracle = cube_oracle.oracle_cohomology(K, args.coefficients)
    except cube_oracle.CapExceeded as exc:
        raise InputError(str(exc)) from None
    ck = realmac_chain.ck_cohomology(K, args.coefficients).groups
    norm = lambda g: {k: (v.rank, tuple(v.torsion)) for k, v in g.items() if v.rank or v.torsion}
    a, b = norm(ck), norm(oracle)
    obj = {"agree": a == b, "ck": {str(k): list(v) for k, v in a.items()},
           "oracle": {str(k): list(v) for k, v in b.items()}}
    emit(obj, args.format, "agree" if a == b else f"MISMATCH ck={a} oracle={b}")
    return 0 if a == b else 2


HANDLERS = {
    "validate": cmd_validate,
    "poincare": cmd_poincare,
    "decompose": cmd_decompose,
    "sr": cmd_sr,
    "euler": cmd_euler,
    "genus": cmd_genus,
    "rmac-homology": cmd_rmac_homology,
    "rmac-ring": cmd_rmac_ring,
    "ss-run": cmd_ss_run,
    "oracle-check": cmd_oracle_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "tex"), default="text")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--coefficients", "-k", default="Z", help="Z, Q or F<p>")
    common.add_argument("--variant", default="Zhat", help="Zhat (smash product) or Z")
    common.add_argument("--preset", help="built-in pair data: " + ", ".join(sorted(PRESETS)))

    p = argparse.ArgumentParser(prog="polyprod", description="Cohomology of polyhedral products.")
    sub = p.add_subparsers(dest="command", metavar="command")
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("complex")
        if name not in ("euler", "genus", "rmac-homology", "rmac-ring", "oracle-check"):
            sp.add_argument("pairs", nargs="?", help="pair data JSON (default (D1,S0))")
        if name == "ss-run":
            sp.add_argument("--pages", action="store_true", help="dump every page")
            sp.add_argument("--walk", type=int, metavar="T",
                            help="grow K one face at a time from filtration T and print the tables")
            sp.add_argument("--check", action="store_true", help="recompute pages from Z_r and B_r")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    if not args.command:
        parser.print_usage(sys.stderr)
        return 1
    if not hasattr(args, "pairs"):
        args.pairs = None
    try:
        coefficients(args.coefficients)
        args.variant = spectral.variant_name(args.variant)
        return HANDLERS[args.command](args)
    except (ConsistencyError, spectral.SpectralConsistencyError, decomposition.DecompositionError,
            InvalidComplexError) as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 2
    except (InputError, ValueError) as exc:
        msg = "; ".join(exc.issues) if isinstance(exc, PairDataError) else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return 1

if __name__ == "__main__":
    sys.exit(main())
