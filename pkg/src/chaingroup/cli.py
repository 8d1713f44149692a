"""Command-line front end: ``chaingroup <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

import numpy as np

from . import __version__
from . import spectral
from .center_action import ChainHomomorphism, action_on_center
from .chain import chain_group, eta_check
from .chartable import DEFAULT_TOL, character_table
from .errors import ChainGroupError, ParseError
from .fusion import axiom_violations, fusion_coefficients
from .groups import center
from .lie import FAMILIES, lie_chain_classes, monotone_stability
from .reproduce import rows_to_json, verify_all
from .specs import parse_group, parse_pairs, parse_perm, parse_system

SCHEMA = "1"

EXIT_CODES = """exit codes:
  0  success / all checks pass
  1  a reported check failed (verify-all row mismatch, fusion axiom, eta certificate)
  2  parse error in a group, system, label or mapping spec
  3  numerical residual above tolerance (character table, fusion rounding)
  4  theorem-violation certificate (eta, well-definedness, window too small)
  5  closure cap exceeded while generating a permutation group
  6  invalid input (not a group, unknown irrep, not unitary, not a homomorphism, ...)
"""

GROUP_SPECS = """group specs: D:8 Q:12 S:4 A:4 C:6 (or D8, S3, Z5), perm:(1 2),(1 2 3),
  file:group.json, products such as C:2*D:8"""


def _fmt(z: complex) -> str:
    re_, im = round(float(z.real), 6) + 0.0, round(float(z.imag), 6) + 0.0
    if im == 0:
        return f"{re_:g}"
    if re_ == 0:
        return f"{im:g}i"
    return f"{re_:g}{im:+g}i"


def envelope(args, result, ok: bool, message: str) -> dict:
    return {
        "schema": SCHEMA,
        "command": args.command,
        "input": {k: v for k, v in sorted(vars(args).items())
                  if k not in ("command", "json", "func", "lab_command")},
        "seed": args.seed,
        "version": __version__,
        "result": result,
        "summary": {"ok": ok, "message": message},
    }


def emit(args, result, ok: bool, message: str, text: Callable[[], str]) -> int:
    if args.json:
        print(json.dumps(envelope(args, result, ok, message), sort_keys=True, indent=2))
    else:
        out = text()
        if out:
            print(out)
    return 0 if ok else 1


# --- commands ----------------------------------------------------------------

def cmd_group(args) -> int:
    G = parse_group(args.group, cap=args.cap)
    res = {"label": G.label, "order": G.order, "abelian": G.is_abelian(),
           "class_sizes": G.class_sizes.tolist(),
           "class_reps": [G.names[r] for r in G.class_reps],
           "center": [G.names[z] for z in center(G)]}
    if args.table:
        res["mul"] = G.mul.tolist()
        res["names"] = list(G.names)

    def text():
        lines = [f"group {G.label}: order {G.order}, {G.num_classes} classes, "
                 f"{'abelian' if res['abelian'] else 'non-abelian'}",
                 "class sizes: " + " ".join(map(str, res["class_sizes"])),
                 "center: {" + ", ".join(res["center"]) + "}"]
        return "\n".join(lines)

    return emit(args, res, True, f"order {G.order}", text)


def cmd_chartable(args) -> int:
    G = parse_group(args.group, cap=args.cap)
    T = character_table(G, seed=args.seed, tol=args.tol)
    res = T.to_json()

    def text():
        reps = [G.names[r] for r in G.class_reps]
        w = max(8, *(len(r) + 2 for r in reps))
        head = " " * 6 + "".join(f"{r:>{w}}" for r in reps)
        lines = [f"character table of {G.label} (residual {T.residual:.1e})", head,
                 " " * 6 + "".join(f"{s:>{w}}" for s in G.class_sizes.tolist())]
        for i in range(T.rank):
            lines.append(f"{T.names[i]:<6}" + "".join(f"{_fmt(v):>{w}}" for v in T.values[i]))
        return "\n".join(lines)

    return emit(args, res, True, f"{T.rank} irreps", text)


def cmd_fusion(args) -> int:
    G = parse_group(args.group, cap=args.cap)
    R = fusion_coefficients(character_table(G, seed=args.seed, tol=args.tol), tol=args.tol)
    if args.pair:
        i, j = (R.check_index(x) for x in args.pair)
        out = {R.names[k]: int(R.N[i, j, k]) for k in R.support(i, j)}
        res = {"pair": [R.names[i], R.names[j]], "product": out}
        text = lambda: f"{R.names[i]} x {R.names[j]} = " + " + ".join(
            (f"{v} {k}" if v > 1 else k) for k, v in out.items())
        return emit(args, res, True, "ok", text)
    bad = axiom_violations(R, seed=args.seed)
    res = R.to_json()
    res["axiom_violations"] = bad

    def text():
        lines = [f"fusion ring of {G.label}: rank {R.rank}, rounding residual {R.residual:.1e}"]
        for i in range(R.rank):
            for j in range(i, R.rank):
                terms = [(f"{R.N[i, j, k]} {R.names[k]}" if R.N[i, j, k] > 1 else R.names[k])
                         for k in R.support(i, j)]
                lines.append(f"  {R.names[i]} x {R.names[j]} = " + " + ".join(terms))
        lines.append("axioms: " + ("OK" if not bad else "; ".join(bad)))
        return "\n".join(lines)

    return emit(args, res, not bad, "axioms OK" if not bad else "axiom violations", text)


def cmd_chain(args) -> int:
    G = parse_group(args.group, cap=args.cap)
    T = character_table(G, seed=args.seed, tol=args.tol)
    cert = eta_check(G, seed=args.seed, table=T)
    C = cert.chain
    res = {"chain": C.to_json(), "eta": cert.to_json()}
    msg = f"classes: {C.order}; group: {C.structure}; eta: {'OK' if cert.ok else 'FAIL'}"

    def text():
        lines = [msg]
        for p, names in enumerate(C.class_names()):
            lines.append(f"  [{p}] {{{', '.join(names)}}}")
        lines.append("eta pairing (rows: classes, columns: center " + ", ".join(cert.center_names) + ")")
        for p, row in enumerate(cert.pairing):
            lines.append(f"  [{p}] " + " ".join(f"{_fmt(z):>6}" for z in row))
        return "\n".join(lines)

    return emit(args, res, cert.ok, msg, text)


_LIE_SHORT = {"SU2": "integer / half-integer", "SO3": "single class", "O3": "eps = 0 / eps = 1",
              "U2": "keyed by m"}


def cmd_lie(args) -> int:
    fam = args.family.upper()
    rep = lie_chain_classes(fam, args.lmax)
    res = rep.to_json()
    if args.monotone:
        res["monotone"] = monotone_stability(fam, tuple(args.monotone))
    ok = rep.stable and rep.invariant_homomorphism and res.get("monotone", True)
    k = len(rep.classes)
    msg = f"{k} class{'es' if k != 1 else ''} ({_LIE_SHORT[fam]}); {rep.structure}"

    def text():
        lines = [msg, f"window lmax={args.lmax}: {len(rep.labels)} labels; invariant: {rep.invariant}",
                 f"stable: {rep.stable}; invariant additive: {rep.invariant_homomorphism}"]
        if "monotone" in res:
            lines.append(f"monotone over lmax {args.monotone}: {res['monotone']}")
        return "\n".join(lines)

    return emit(args, res, bool(ok), msg, text)


def cmd_center_action(args) -> int:
    G = parse_group(args.group, cap=args.cap)
    R = fusion_coefficients(character_table(G, seed=args.seed, tol=args.tol), tol=args.tol)
    C = chain_group(R)
    mapping = {c: parse_perm(p, args.gamma) for c, p in parse_pairs(args.hom, what="--hom").items()}
    for c in mapping:
        if not 0 <= c < C.order:
            raise ParseError(f"--hom class {c} outside 0..{C.order - 1}")
    h = (ChainHomomorphism.from_mapping(C, mapping, args.gamma) if mapping
         else ChainHomomorphism.trivial(C, args.gamma))
    lam = {}
    for k, v in parse_pairs(args.lam, what="--lambda").items():
        try:
            lam[k] = int(v)
        except ValueError:
            raise ParseError(f"bad multiplicity {v!r}") from None
    if not lam:
        raise ParseError("--lambda needs at least one irrep:multiplicity entry")
    if args.z:
        try:
            Z = np.array([complex(v) for v in args.z.split(",")])
        except ValueError:
            raise ParseError(f"bad --z values {args.z!r}") from None
    else:
        Z = np.zeros(args.gamma, dtype=complex)
        Z[0] = 1
    r = action_on_center(lam, h, Z)
    res = {"hom": h.to_json(), "lambda": {str(k): v for k, v in sorted(lam.items())},
           "action": r.to_json()}
    msg = (f"{len(r.terms)} class term(s); total weight {r.total_weight}; "
           f"{'central' if r.central else 'not central'}")

    def text():
        lines = [msg]
        for t in r.terms:
            lines.append(f"  class [{t.cls}] {{{', '.join(R.names[i] for i in C.classes[t.cls])}}}: "
                         f"weight {t.weight}, alpha(Z) = ({', '.join(_fmt(z) for z in t.function)})")
        return "\n".join(lines)

    return emit(args, res, True, msg, text)


def cmd_lab(args) -> int:
    sysm = parse_system(args.system, seed=args.seed)
    cmd = args.lab_command
    rng = np.random.default_rng(args.seed)
    if cmd == "parseval":
        worst = recon = 0.0
        for _ in range(args.samples):
            pr = spectral.parseval_check(sysm, sysm.algebra.random_element(rng))
            worst, recon = max(worst, pr.residual), max(recon, pr.reconstruction_residual)
        ok = max(worst, recon) < spectral.TOL
        res = {"system": sysm.label, "samples": args.samples, "max_residual": worst,
               "max_reconstruction_residual": recon}
        msg = f"max residual {worst:.2e}; reconstruction {recon:.2e}"
    elif cmd == "projections":
        pc = spectral.projection_checks(sysm, samples=args.samples, seed=args.seed)
        nb = spectral.norm_bound_check(sysm, samples=args.samples, seed=args.seed)
        ok = pc.max_residual() < spectral.TOL and nb.ok
        res = {"system": sysm.label, "orthogonality": pc.orthogonality,
               "completeness": pc.completeness, "module": pc.module, "symmetry": pc.symmetry,
               "norm_ratio": {str(k): v for k, v in nb.max_ratio.items()},
               "norm_bound": {str(k): v for k, v in nb.bound.items()},
               "A_norm_ratio": {str(k): v for k, v in nb.max_A_ratio.items()},
               "violations": nb.violations}
        msg = (f"max residual {pc.max_residual():.2e}; "
               f"norm bounds {'hold' if nb.ok else 'VIOLATED'}")
    elif cmd == "minimality":
        mr = spectral.minimality_report(sysm, seed=args.seed)
        res = mr.to_json()
        ok = mr.biconditional is not False
        msg = (f"dim A={mr.dim_fixed}, dim A'nF={mr.dim_relative_commutant}, dim Z(A)={mr.dim_center}; "
               f"minimal={mr.minimal}; disjoint={mr.disjoint}; biconditional={mr.biconditional}")
    else:  # intertwiners
        A = spectral.fixed_point_algebra(sysm)
        phis = {D: spectral.algebraic_hilbert_space(sysm, D, seed=args.seed)
                for D in range(sysm.table.rank)}
        rhos = {D: spectral.canonical_endomorphism(sysm, P, A=A) for D, P in phis.items()
                if P is not None}
        names = sysm.table.names
        dims = {f"{names[a]},{names[b]}": spectral.intertwiner_space(rhos[a], rhos[b], A).shape[0]
                for a in rhos for b in rhos}
        res = {"system": sysm.label, "realized": [names[D] for D in rhos], "dims": dims}
        ok = True
        msg = "; ".join(f"({k}): {v}" for k, v in dims.items())
    return emit(args, res, ok, msg, lambda: f"{sysm.label}: {msg}")


def cmd_verify_all(args) -> int:
    rows = verify_all(only=args.only, seed=args.seed, workers=args.workers)
    ok = bool(rows) and all(r.passed for r in rows)
    msg = f"{sum(r.passed for r in rows)}/{len(rows)} rows pass"

    def text():
        w = max([len(r.name) for r in rows] + [4])
        lines = [f"{'crit':<5}{'row':<{w + 2}}{'status':<7}reference  |  computed"]
        for r in rows:
            lines.append(f"{r.criterion:<5}{r.name:<{w + 2}}{'PASS' if r.passed else 'FAIL':<7}"
                         f"{r.expected}  |  {r.computed}")
        lines.append(msg)
        return "\n".join(lines)

    emit(args, rows_to_json(rows), ok, msg, text)
    return 0 if ok else 1


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a versioned JSON report")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="character / fusion rounding tolerance (default 1e-6)")
    common.add_argument("--samples", type=int, default=100, help="random samples for lab checks")
    common.add_argument("--cap", type=int, default=10_000, help="closure cap for perm: groups")

    p = argparse.ArgumentParser(
        prog="chaingroup",
        description="Chain groups of finite and compact groups, and spectral checks "
                    "for finite matrix dynamical systems.",
        epilog=GROUP_SPECS + "\n\n" + EXIT_CODES,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"chaingroup {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, epilog=EXIT_CODES,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.set_defaults(func=func)
        return sp

    sp = add("group", cmd_group, "order, classes and center of a group")
    sp.add_argument("group")
    sp.add_argument("--table", action="store_true", help="include the multiplication table")
    sp = add("chartable", cmd_chartable, "character table")
    sp.add_argument("group")
    sp = add("fusion", cmd_fusion, "fusion coefficients and axiom checks")
    sp.add_argument("group")
    sp.add_argument("--pair", nargs=2, type=int, metavar=("I", "J"), help="decompose one product")
    sp = add("chain", cmd_chain, "chain classes, chain group and eta certificate")
    sp.add_argument("group")
    sp = add("lie", cmd_lie, "chain classes of SU2, SO3, O3, U2 on a finite window")
    sp.add_argument("family", choices=FAMILIES, type=str.upper)
    sp.add_argument("--lmax", type=int, default=10)
    sp.add_argument("--monotone", type=int, nargs="*", metavar="L",
                    help="also check monotone stability across these window sizes")
    sp = add("center-action", cmd_center_action, "action of lambda on Z = C(Gamma)")
    sp.add_argument("group")
    sp.add_argument("--gamma", type=int, required=True, help="|Gamma|")
    sp.add_argument("--hom", default="",
                    help="class:permutation,...  e.g. '1:(1 2)' or '1:1 0' (others forced or identity)")
    sp.add_argument("--lambda", dest="lam", required=True, help="irrep:multiplicity,...")
    sp.add_argument("--z", help="function values z0,z1,... (default: indicator of point 0)")
    sp = add("lab", cmd_lab, "spectral checks on a matrix dynamical system")
    sp.add_argument("lab_command", choices=("parseval", "projections", "minimality", "intertwiners"))
    sp.add_argument("system", help="regular:S3, swap-blocks:2, trivial:n, file:sys.json or inline JSON")
    sp = add("verify-all", cmd_verify_all, "recompute the reference table")
    sp.add_argument("--only", help="substring filter on row names")
    sp.add_argument("--workers", type=int, default=4)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if getattr(args, "lmax", 2) < 0 or args.samples < 1:
        print("error: --lmax and --samples must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ChainGroupError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error (ValueError): {exc}", file=sys.stderr)
        return 6


if __name__ == "__main__":
    sys.exit(main())
