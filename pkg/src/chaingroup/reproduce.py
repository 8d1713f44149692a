"""Reference values for chain groups of the classical examples, and the
batch run that recomputes and compares them."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import groups
from .center_action import (ChainHomomorphism, action_on_center, composition_consistency,
                            random_unitary_functions, symmetry_obstruction)
from .chain import chain_group, eta_check, partition_by_central_character
from .chartable import CharacterTable, character_table
from .errors import ChainGroupError
from .fusion import axiom_violations, fusion_coefficients
from .groups import FiniteGroup
from .lie import lie_chain_classes, monotone_stability
from . import spectral


@dataclass
class Row:
    criterion: int
    name: str
    expected: str
    computed: str
    passed: bool
    seconds: float = 0.0


def dihedral_labels(T: CharacterTable) -> dict[int, str]:
    """Conventional names ``1, chi1, chi2, chi3, D_k`` for the irreps of a
    dihedral group of order ``2m``: ``chi1`` is trivial on ``a`` and ``-1`` on
    ``b``; ``chi2``, ``chi3`` send ``a`` to ``-1``; ``D_k`` has trace
    ``2 cos(2 pi k / m)`` at ``a``."""
    G = T.group
    if not G.family or G.family[0] != "dihedral":
        raise ValueError("not a dihedral group from the built-in family")
    m = G.family[1]
    a, b = 1, m
    out = {}
    for D in range(T.rank):
        va, vb = T.character(D, a).real, T.character(D, b).real
        if T.dims[D] == 1:
            if va > 0:
                out[D] = "1" if vb > 0 else "chi1"
            else:
                out[D] = "chi2" if vb > 0 else "chi3"
        else:
            k = int(round(np.arccos(np.clip(va / 2, -1, 1)) * m / (2 * np.pi)))
            out[D] = f"D{k}"
    return out


def dihedral_expected_classes(m: int) -> list[set[str]]:
    """Chain classes of the dihedral group of order 2m, m even, from the
    standard description by the parity of l = m/2."""
    l = m // 2
    ks = range(1, (m - 2) // 2 + 1)
    even = {f"D{k}" for k in ks if k % 2 == 0}
    odd = {f"D{k}" for k in ks if k % 2 == 1}
    if l % 2 == 0:
        return [{"1", "chi1", "chi2", "chi3"} | even, odd]
    return [{"1", "chi1"} | even, {"chi2", "chi3"} | odd]


def _chain_row(G: FiniteGroup, expected: str, crit: int = 1) -> Row:
    t = time.perf_counter()
    R = fusion_coefficients(character_table(G))
    C = chain_group(R)
    computed = C.structure
    ok = computed == expected
    return Row(crit, f"chain {G.label}", expected, computed, ok, time.perf_counter() - t)


def _dihedral_membership_row(m: int) -> Row:
    t = time.perf_counter()
    G = groups.dihedral(m)
    T = character_table(G)
    C = chain_group(fusion_coefficients(T))
    names = dihedral_labels(T)
    got = [set(names[i] for i in c) for c in C.classes]
    want = dihedral_expected_classes(m)
    ok = C.structure == "Z2" and sorted(map(sorted, got)) == sorted(map(sorted, want))
    fmt = lambda cs: " | ".join("{" + ",".join(sorted(c)) + "}" for c in cs)
    return Row(1, f"classes D{2 * m}", fmt(want), fmt(got), ok, time.perf_counter() - t)


def random_products(count: int = 20, *, seed: int = 0, max_order: int = 200) -> list[FiniteGroup]:
    """Seeded random direct products of built-in groups with order <= max_order."""
    rng = np.random.default_rng(seed)
    pool = ([groups.cyclic(n) for n in range(2, 13)]
            + [groups.dihedral(m) for m in range(2, 13)]
            + [groups.quaternion(m) for m in range(2, 7)]
            + [groups.symmetric(3), groups.symmetric(4), groups.alternating(4)])
    out = []
    while len(out) < count:
        k = int(rng.integers(2, 4))
        picks = [pool[int(i)] for i in rng.integers(0, len(pool), size=k)]
        if int(np.prod([g.order for g in picks])) > max_order:
            continue
        G = picks[0]
        for H in picks[1:]:
            G = groups.direct_product(G, H)
        out.append(G)
    return out


def criterion1_groups() -> list[tuple[FiniteGroup, str]]:
    rows = [(groups.dihedral(m), "Z2") for m in (4, 6, 8, 10, 12)]
    rows += [(groups.dihedral(m), "trivial") for m in (3, 5, 7)]
    rows += [(groups.quaternion(m), "Z2") for m in (2, 3, 4, 5, 6)]
    rows += [(groups.symmetric(3), "trivial"), (groups.symmetric(4), "trivial"),
             (groups.alternating(4), "trivial")]
    rows += [(groups.cyclic(n), f"Z{n}") for n in range(2, 13)]
    return rows


def _eta_row(G: FiniteGroup) -> Row:
    t = time.perf_counter()
    try:
        cert = eta_check(G)
        T = character_table(G)
        oracle = partition_by_central_character(T)
        same = np.array_equal(oracle, cert.chain.partition)
        ok = cert.ok and same and cert.chain.order == len(cert.center)
        computed = f"{cert.chain.structure}; |Z|={len(cert.center)}; oracle {'agrees' if same else 'DIFFERS'}"
    except ChainGroupError as exc:
        ok, computed = False, f"{type(exc).__name__}: {exc}"
    return Row(2, f"eta {G.label}", "bijective homomorphism onto dual of center", computed, ok,
               time.perf_counter() - t)


def _dq_row(l: int) -> Row:
    t = time.perf_counter()
    D = chain_group(fusion_coefficients(character_table(groups.dihedral(4 * l))))
    Q = chain_group(fusion_coefficients(character_table(groups.quaternion(2 * l))))
    ok = D.invariant_factors == Q.invariant_factors == (2,)
    return Row(3, f"D{8 * l} vs Q{8 * l}", "[2] = [2]",
               f"{list(D.invariant_factors)} = {list(Q.invariant_factors)}", ok,
               time.perf_counter() - t)


_LIE_EXPECTED = {"SU2": (2, "Z2"), "SO3": (1, "trivial"), "O3": (2, "Z2"), "U2": (41, "Z")}


def _lie_row(family: str) -> Row:
    t = time.perf_counter()
    rep = lie_chain_classes(family, 10)
    mono = monotone_stability(family, (4, 8, 12))
    n, s = _LIE_EXPECTED[family]
    ok = (len(rep.classes) == n and rep.structure == s and rep.stable
          and rep.invariant_homomorphism and mono)
    return Row(4, f"lie {family}", f"{s} keyed by {rep.invariant}",
               f"{rep.structure}, {len(rep.classes)} classes, stable={rep.stable}, monotone={mono}",
               ok, time.perf_counter() - t)


def builtin_groups() -> list[FiniteGroup]:
    seen = {}
    for G, _ in criterion1_groups():
        seen[G.label] = G
    return list(seen.values())


def _fusion_row(G: FiniteGroup) -> Row:
    t = time.perf_counter()
    R = fusion_coefficients(character_table(G))
    bad = axiom_violations(R)
    ok = not bad and R.residual < 1e-6
    return Row(5, f"fusion {G.label}", "all axioms exact, residual < 1e-6",
               f"violations={bad or 'none'}, residual={R.residual:.1e}", ok, time.perf_counter() - t)


def _lab_row(spec_name: str, sys_factory, samples: int = 100, seed: int = 0) -> Row:
    t = time.perf_counter()
    sys = sys_factory()
    rng = np.random.default_rng(seed)
    pars = recon = 0.0
    for _ in range(samples):
        res = spectral.parseval_check(sys, sys.algebra.random_element(rng))
        pars = max(pars, res.residual)
        recon = max(recon, res.reconstruction_residual)
    pc = spectral.projection_checks(sys, samples=samples, seed=seed)
    nb = spectral.norm_bound_check(sys, samples=samples, seed=seed)
    worst = max(pars, recon, pc.max_residual())
    ok = worst < 1e-9 and nb.ok
    return Row(6, f"lab {spec_name}", "residuals < 1e-9, norm bounds hold",
               f"max residual {worst:.1e}, norm bounds {'hold' if nb.ok else 'VIOLATED'}", ok,
               time.perf_counter() - t)


def _minimality_row(spec_name: str, sys_factory, want_minimal: bool) -> Row:
    t = time.perf_counter()
    rep = spectral.minimality_report(sys_factory())
    ok = rep.minimal == want_minimal and rep.disjoint == want_minimal and bool(rep.biconditional)
    exp = "minimal and disjoint" if want_minimal else "not minimal, not disjoint"
    got = f"minimal={rep.minimal}, disjoint={rep.disjoint}, biconditional={rep.biconditional}"
    return Row(7, f"minimality {spec_name}", exp, got, ok, time.perf_counter() - t)


def center_action_row(G: FiniteGroup, *, trials: int = 100, seed: int = 0) -> Row:
    t = time.perf_counter()
    C = chain_group(fusion_coefficients(character_table(G)))
    r = C.ring.rank
    rng = np.random.default_rng(seed)
    homs = [ChainHomomorphism.trivial(C, 3), ChainHomomorphism.regular(C)]
    ok_w = ok_c = True
    for s in range(trials):
        lam = rng.integers(0, 3, size=r)
        if not lam.any():
            lam[int(rng.integers(0, r))] = 1
        mu = rng.integers(0, 3, size=r)
        if not mu.any():
            mu[0] = 1
        h = homs[s % 2]
        Z = rng.standard_normal(h.gamma_size) + 0j
        res = action_on_center(lam, h, Z)
        ok_w &= sum(tm.weight for tm in res.terms) == int(lam @ C.ring.dims)
        ok_c &= bool(composition_consistency(lam, mu, h, seed=s))
    return Row(8, f"center-action {G.label}", "weights sum to d(lambda); composition consistent",
               f"weights {'ok' if ok_w else 'FAIL'}, composition {'ok' if ok_c else 'FAIL'}",
               ok_w and ok_c, time.perf_counter() - t)


def symmetry_rows(*, trials: int = 100, seed: int = 0) -> list[Row]:
    t = time.perf_counter()
    C = chain_group(fusion_coefficients(character_table(groups.dihedral(4))))
    rng = np.random.default_rng(seed)
    triv = ChainHomomorphism.trivial(C, 4)
    all_true = all(
        symmetry_obstruction(triv, 1, 1, random_unitary_functions(2, 4, rng),
                             random_unitary_functions(3, 4, rng))
        for _ in range(trials))
    rows = [Row(8, "symmetry trivial h", "true on 100 random unitaries", str(all_true), all_true,
                time.perf_counter() - t)]
    t = time.perf_counter()
    swap = ChainHomomorphism.from_mapping(C, {1: (1, 0)})
    f = np.array([1, -1], dtype=complex)
    ZA = np.zeros((2, 2, 2), dtype=complex)
    ZA[0, 0], ZA[1, 1] = f, 1
    ZB = np.zeros((1, 1, 2), dtype=complex)
    ZB[0, 0] = 1
    val = symmetry_obstruction(swap, 1, 1, ZA, ZB)
    rows.append(Row(8, "symmetry swap counterexample", "false", str(val), val is False,
                    time.perf_counter() - t))
    return rows


def _tags(G: FiniteGroup, kind: str) -> str:
    fam = G.family[0] if G.family else "product"
    return f"{kind} {fam}"


def table_jobs(*, seed: int = 0):
    """``(name, tags, callable)`` triples; each callable returns a list of rows."""
    jobs = []
    for G, exp in criterion1_groups():
        jobs.append((f"chain {G.label}", _tags(G, "chain"), lambda G=G, exp=exp: [_chain_row(G, exp)]))
    for m in (4, 6, 8, 10, 12):
        jobs.append((f"classes D{2 * m}", "dihedral chain", lambda m=m: [_dihedral_membership_row(m)]))
    for G in builtin_groups() + random_products(20, seed=seed):
        jobs.append((f"eta {G.label}", _tags(G, "eta"), lambda G=G: [_eta_row(G)]))
    for l in (1, 2, 3):
        jobs.append((f"D{8 * l} vs Q{8 * l}", "dihedral quaternion", lambda l=l: [_dq_row(l)]))
    for fam in ("SU2", "SO3", "O3", "U2"):
        jobs.append((f"lie {fam}", "lie", lambda fam=fam: [_lie_row(fam)]))
    for G in builtin_groups():
        jobs.append((f"fusion {G.label}", _tags(G, "fusion"), lambda G=G: [_fusion_row(G)]))
    lab = {
        "regular:Z5": lambda: spectral.regular_system(groups.cyclic(5)),
        "regular:S3": lambda: spectral.regular_system(groups.symmetric(3)),
        "regular:D8": lambda: spectral.regular_system(groups.dihedral(4)),
        "swap-blocks:2": lambda: spectral.swap_blocks_system(2),
    }
    for name, fac in lab.items():
        jobs.append((f"lab {name}", "lab spectral", lambda name=name, fac=fac: [_lab_row(name, fac, seed=seed)]))
    for n in (2, 3, 4, 5, 6):
        jobs.append((f"minimality regular:Z{n}", "lab cyclic", lambda n=n: [_minimality_row(
            f"regular:Z{n}", lambda: spectral.regular_system(groups.cyclic(n)), True)]))
    jobs.append(("minimality swap-blocks:2", "lab", lambda: [_minimality_row(
        "swap-blocks:2", lambda: spectral.swap_blocks_system(2), False)]))
    for G in builtin_groups():
        jobs.append((f"center-action {G.label}", _tags(G, "center"), lambda G=G: [center_action_row(G, seed=seed)]))
    jobs.append(("symmetry", "center dihedral", lambda: symmetry_rows(seed=seed)))
    return jobs


def verify_all(*, only: str | None = None, seed: int = 0, workers: int = 4) -> list[Row]:
    """Run the table (rows whose name or tags contain ``only``) in a thread
    pool; rows come back in table order regardless of scheduling."""
    pat = (only or "").lower()
    jobs = [(n, f) for n, tags, f in table_jobs(seed=seed) if pat in f"{n} {tags}".lower()]

    def run(job):
        name, fn = job
        try:
            return fn()
        except ChainGroupError as exc:
            return [Row(0, name, "no error", f"{type(exc).__name__}: {exc}", False)]

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        results = list(pool.map(run, jobs))
    return [row for rows in results for row in rows]


def rows_to_json(rows: list[Row], *, timings: bool = False) -> list[dict]:
    out = []
    for r in rows:
        d = asdict(r)
        if not timings:
            d.pop("seconds")
        out.append(d)
    return out
