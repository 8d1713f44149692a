"""Fusion rings of finite groups from character inner products."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .chartable import DEFAULT_TOL, CharacterTable
from .errors import NumericalResidual, UnknownIrrep

EXHAUSTIVE_ASSOC_RANK = 40
SAMPLED_ASSOC_QUADS = 5000


@dataclass(frozen=True, eq=False)
class FusionRing:
    """``N[i, j, k]`` is the multiplicity of irrep ``k`` in ``i x j``; index 0 is trivial."""

    N: np.ndarray
    conj: np.ndarray
    dims: np.ndarray
    names: tuple[str, ...] = ()
    residual: float = 0.0
    table: CharacterTable | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return self.N.shape[0]

    def support(self, i: int, j: int) -> list[int]:
        return np.flatnonzero(self.N[i, j]).tolist()

    def name(self, i: int) -> str:
        return self.names[i] if self.names else str(i)

    def check_index(self, i: int) -> int:
        if not 0 <= int(i) < self.rank:
            raise UnknownIrrep(f"irrep index {i} outside 0..{self.rank - 1}")
        return int(i)

    def fuse(self, m1: np.ndarray, m2: np.ndarray) -> np.ndarray:
        """Multiplicity vector of the tensor product of two multiplicity vectors."""
        return np.einsum("i,j,ijk->k", m1, m2, self.N)

    def sparse(self) -> list[list[int]]:
        """Nonzero entries as ``[i, j, k, value]`` rows."""
        idx = np.argwhere(self.N)
        return [[int(i), int(j), int(k), int(self.N[i, j, k])] for i, j, k in idx]

    def to_json(self) -> dict:
        return {"rank": self.rank, "dims": self.dims.tolist(), "conj": self.conj.tolist(),
                "names": list(self.names), "N": self.sparse()}


def fusion_coefficients(T: CharacterTable, *, tol: float = DEFAULT_TOL) -> FusionRing:
    """``N_ij^k = |G|^-1 sum_C |C| chi_i chi_j conj(chi_k)``, rounded to integers.

    Raises :class:`NumericalResidual` if any coefficient is farther than
    ``tol`` from a nonnegative integer.
    """
    X = T.values
    G = T.group
    w = G.class_sizes.astype(float) / G.order
    Xc = X.conj().T
    r = T.rank
    N = np.empty((r, r, r), dtype=np.int64)
    residual = 0.0
    for i in range(r):
        Nf = (X[i][None, :] * X * w[None, :]) @ Xc
        Ni = np.rint(Nf.real)
        residual = max(residual, float(np.abs(Nf - Ni).max()))
        N[i] = Ni.astype(np.int64)
    if residual > tol:
        raise NumericalResidual(f"fusion coefficient residual {residual:.3e} exceeds {tol:g}")
    if (N < 0).any():
        raise NumericalResidual("negative fusion coefficient")
    conj = np.array([T.conjugate_index(i) for i in range(r)], dtype=np.int64)
    for a in (N, conj):
        a.setflags(write=False)
    return FusionRing(N, conj, np.asarray(T.dims), T.names, residual, T)


def product_support(S1: Iterable[int], S2: Iterable[int], R: FusionRing) -> set[int]:
    """Set-level fusion: every irrep occurring in some ``A x B``."""
    S1 = [R.check_index(i) for i in S1]
    S2 = [R.check_index(j) for j in S2]
    if not S1 or not S2:
        return set()
    hit = R.N[np.ix_(S1, S2)].sum(axis=(0, 1))
    return set(np.flatnonzero(hit).tolist())


def axiom_violations(R: FusionRing, *, seed: int = 0) -> list[str]:
    """Check the fusion-ring axioms exactly; returns a list of violations."""
    N, c, d = R.N, R.conj, R.dims
    r = R.rank
    out = []
    if not np.array_equal(N, N.transpose(1, 0, 2)):
        out.append("commutativity")
    if not np.array_equal(N[0], np.eye(r, dtype=np.int64)):
        out.append("unit")
    unit_col = N[:, :, 0]
    expect = np.zeros((r, r), dtype=np.int64)
    expect[np.arange(r), c] = 1
    if not np.array_equal(unit_col, expect):
        out.append("conjugate-unit multiplicity")
    if not np.array_equal(N @ d, np.outer(d, d)):
        out.append("dimension rule")
    # N[i, j, k] == N[conj(i), k, j]
    if not np.array_equal(N, N[c].transpose(0, 2, 1)):
        out.append("Frobenius reciprocity")
    if not np.array_equal(c[c], np.arange(r)):
        out.append("conjugation is not an involution")
    if r <= EXHAUSTIVE_ASSOC_RANK:
        left = np.einsum("ijm,mkl->ijkl", N, N)
        right = np.einsum("jkm,iml->ijkl", N, N)
        if not np.array_equal(left, right):
            out.append("associativity")
    else:
        rng = np.random.default_rng(seed)
        q = rng.integers(0, r, size=(SAMPLED_ASSOC_QUADS, 4))
        for i, j, k, l in q:
            if N[i, j, :] @ N[:, k, l] != N[j, k, :] @ N[i, :, l]:
                out.append(f"associativity at {(i, j, k, l)}")
                break
    return out


@dataclass
class DimensionReport:
    violations: list[str]
    samples: int
    seed: int

    @property
    def ok(self) -> bool:
        return not self.violations


def dimension_checks(R: FusionRing, *, samples: int = 100, seed: int = 0,
                     max_factors: int = 3, max_terms: int = 3) -> DimensionReport:
    """Check the dimension function: ``d(1) = 1``, ``d(conj D) = d(D)``,
    multiplicativity on products and additivity on random composites.

    A random composite is a direct sum of up to ``max_terms`` tensor products
    of up to ``max_factors`` irreps; its dimension computed from the factors
    must equal ``sum_j m_j d_j`` over the fused multiplicity vector.
    """
    d = R.dims
    bad = []
    if d[0] != 1:
        bad.append("d(trivial) != 1")
    if not np.array_equal(d[R.conj], d):
        bad.append("d(conj D) != d(D)")
    if not np.array_equal(R.N @ d, np.outer(d, d)):
        bad.append("sum_k N_ij^k d_k != d_i d_j")
    rng = np.random.default_rng(seed)
    r = R.rank
    for s in range(samples):
        m = np.zeros(r, dtype=np.int64)
        direct = 0
        for _ in range(rng.integers(1, max_terms + 1)):
            factors = rng.integers(0, r, size=rng.integers(1, max_factors + 1))
            term = np.zeros(r, dtype=np.int64)
            term[factors[0]] = 1
            for f in factors[1:]:
                e = np.zeros(r, dtype=np.int64)
                e[f] = 1
                term = R.fuse(term, e)
            m += term
            direct += int(np.prod(d[factors]))
        if int(m @ d) != direct:
            bad.append(f"sample {s}: sum m_j d_j = {int(m @ d)} != {direct}")
    return DimensionReport(bad, samples, seed)
