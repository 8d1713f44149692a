"""Finite groups acting on finite-dimensional matrix algebras.

A system is a finite group ``G``, a unitary representation ``g -> U_g`` on
``C^n`` and a unital *-subalgebra ``F`` of ``M_n`` (the full matrix algebra
unless stated) invariant under ``alpha_g = Ad U_g``. Everything in the
continuous theory that only needs the Haar average has an exact analogue
here: spectral projections, the fixed-point algebra ``A``, the A-valued
scalar product, relative commutants and canonical endomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .chartable import CharacterTable, character_table
from .errors import NonAbelianGroup, NotAHomomorphism, NotInvariant, NotUnitary
from .groups import FiniteGroup, cyclic

TOL = 1e-9
RANK_TOL = 1e-8


def _opnorm(X: np.ndarray) -> float:
    return float(np.linalg.norm(X, 2)) if X.size else 0.0


def _orthonormal_rows(V: np.ndarray, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (rows) of the row span of ``V``."""
    if V.shape[0] == 0:
        return V
    _, s, vh = np.linalg.svd(V, full_matrices=False)
    k = int((s > rank_tol * max(1.0, s[0])).sum())
    return vh[:k]


def _nullspace(M: np.ndarray, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the kernel of ``M``."""
    n = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(n, dtype=complex)
    _, s, vh = np.linalg.svd(M)
    k = int((s > rank_tol * max(1.0, s[0] if len(s) else 0.0)).sum())
    return vh[k:].conj().T


@dataclass(frozen=True, eq=False)
class Subalgebra:
    """Subspace of ``M_n`` given by a Hilbert-Schmidt orthonormal basis ``(d, n, n)``."""

    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def n(self) -> int:
        return self.basis.shape[1]

    @property
    def flat(self) -> np.ndarray:
        return self.basis.reshape(self.dim, -1)

    @classmethod
    def span(cls, mats, n: int | None = None) -> "Subalgebra":
        mats = np.asarray(mats, dtype=complex)
        if mats.size == 0:
            return cls(np.zeros((0, n or 0, n or 0), dtype=complex))
        n = mats.shape[-1]
        rows = _orthonormal_rows(mats.reshape(mats.shape[0], -1))
        return cls(rows.reshape(-1, n, n))

    @classmethod
    def full(cls, n: int) -> "Subalgebra":
        return cls(np.eye(n * n, dtype=complex).reshape(n * n, n, n))

    @classmethod
    def block_diagonal(cls, sizes) -> "Subalgebra":
        n = sum(sizes)
        mats = []
        off = 0
        for k in sizes:
            for i in range(k):
                for j in range(k):
                    E = np.zeros((n, n), dtype=complex)
                    E[off + i, off + j] = 1
                    mats.append(E)
            off += k
        return cls(np.array(mats))

    def coords(self, X: np.ndarray) -> np.ndarray:
        return self.flat.conj() @ np.asarray(X, dtype=complex).reshape(-1)

    def from_coords(self, c: np.ndarray) -> np.ndarray:
        return (np.asarray(c) @ self.flat).reshape(self.n, self.n)

    def project(self, X: np.ndarray) -> np.ndarray:
        return self.from_coords(self.coords(X))

    def contains(self, X: np.ndarray, tol: float = TOL) -> bool:
        return _opnorm(self.project(X) - X) <= tol * max(1.0, _opnorm(X))

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        c = rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)
        return self.from_coords(c / np.sqrt(2))

    def closure_residual(self) -> float:
        """Largest distance from the span of ``X*`` and ``XY`` over basis pairs."""
        res = 0.0
        for X in self.basis:
            res = max(res, _opnorm(self.project(X.conj().T) - X.conj().T))
            for Y in self.basis:
                P = X @ Y
                res = max(res, _opnorm(self.project(P) - P))
        return res

    def contains_unit(self, tol: float = TOL) -> bool:
        return self.contains(np.eye(self.n), tol)


@dataclass(frozen=True, eq=False)
class MatrixDynamicalSystem:
    group: FiniteGroup
    rep: np.ndarray
    algebra: Subalgebra
    table: CharacterTable = field(repr=False)
    label: str = "system"

    @property
    def n(self) -> int:
        return self.rep.shape[1]

    def alpha(self, g: int, F: np.ndarray) -> np.ndarray:
        U = self.rep[g]
        return U @ F @ U.conj().T

    def alpha_all(self, F: np.ndarray) -> np.ndarray:
        """``(|G|, n, n)`` stack of ``alpha_g(F)``."""
        return np.einsum("gij,jk,glk->gil", self.rep, F, self.rep.conj())


def make_system(G: FiniteGroup, rep, algebra: Subalgebra | None = None, *,
                label: str = "system", tol: float = TOL, seed: int = 0) -> MatrixDynamicalSystem:
    """Validate and assemble a system.

    Checks that ``rep`` is a unitary homomorphism with ``rep(e) = 1`` and that
    the algebra is a unital *-algebra mapped into itself by every ``alpha_g``.
    """
    rep = np.asarray(rep, dtype=complex)
    if rep.ndim != 3 or rep.shape[0] != G.order or rep.shape[1] != rep.shape[2]:
        raise NotUnitary("rep must have shape (|G|, n, n)")
    n = rep.shape[1]
    I = np.eye(n)
    if _opnorm(rep[G.identity] - I) > tol:
        raise NotUnitary("rep(e) is not the identity")
    for g in range(G.order):
        if _opnorm(rep[g] @ rep[g].conj().T - I) > tol:
            raise NotUnitary(f"rep({G.names[g]}) is not unitary")
    prod = np.einsum("gij,hjk->ghik", rep, rep)
    if np.abs(prod - rep[G.mul]).max() > tol:
        raise NotAHomomorphism("rep is not a homomorphism")
    algebra = algebra if algebra is not None else Subalgebra.full(n)
    if algebra.n != n:
        raise NotInvariant("algebra acts on a different dimension than rep")
    if not algebra.contains_unit(tol) or algebra.closure_residual() > tol:
        raise NotInvariant("algebra is not a unital *-subalgebra")
    for g in range(G.order):
        for X in algebra.basis:
            if not algebra.contains(rep[g] @ X @ rep[g].conj().T, tol):
                raise NotInvariant(f"alpha_{G.names[g]} does not preserve the algebra")
    rep.setflags(write=False)
    T = character_table(G, seed=seed)
    return MatrixDynamicalSystem(G, rep, algebra, T, label)


def regular_system(G: FiniteGroup, **kw) -> MatrixDynamicalSystem:
    """Left regular representation on ``C^|G|`` acting on the full ``M_|G|``."""
    n = G.order
    rep = np.zeros((n, n, n))
    for g in range(n):
        rep[g, G.mul[g], np.arange(n)] = 1.0
    return make_system(G, rep, label=f"regular:{G.label}", **kw)


def swap_blocks_system(k: int = 2, **kw) -> MatrixDynamicalSystem:
    """``Z_2`` swapping the two summands of ``M_k + M_k`` inside ``M_2k``."""
    G = cyclic(2)
    I = np.eye(k)
    Z = np.zeros((k, k))
    S = np.block([[Z, I], [I, Z]])
    return make_system(G, np.array([np.eye(2 * k), S]), Subalgebra.block_diagonal([k, k]),
                       label=f"swap-blocks:{k}", **kw)


def from_generators(G: FiniteGroup, images: Mapping[int, np.ndarray],
                    algebra: Subalgebra | None = None, **kw) -> MatrixDynamicalSystem:
    """Extend matrices on generating elements to all of ``G`` by breadth-first
    products; the result is then validated as a homomorphism."""
    images = {int(g): np.asarray(M, dtype=complex) for g, M in images.items()}
    if not images:
        raise NotUnitary("no generator matrices given")
    n = next(iter(images.values())).shape[0]
    rep: dict[int, np.ndarray] = {G.identity: np.eye(n, dtype=complex)}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, M in images.items():
                y = int(G.mul[x, g])
                if y not in rep:
                    rep[y] = rep[x] @ M
                    nxt.append(y)
        frontier = nxt
    if len(rep) != G.order:
        raise NotUnitary("given elements do not generate the group")
    return make_system(G, np.array([rep[g] for g in range(G.order)]), algebra, **kw)


def trivial_system(n: int, **kw) -> MatrixDynamicalSystem:
    G = cyclic(1)
    return make_system(G, np.eye(n)[None], label=f"trivial:{n}", **kw)


# --- spectral projections -------------------------------------------------

def _weights(sys: MatrixDynamicalSystem, D: int) -> np.ndarray:
    """``dim(D) * conj(chi_D(g)) / |G|`` for every element ``g``."""
    T = sys.table
    chi = T.on_elements()[T._check(D)]
    return int(T.dims[D]) * np.conj(chi) / sys.group.order


def spectral_projection(sys: MatrixDynamicalSystem, D: int, F: np.ndarray) -> np.ndarray:
    """Group average ``|G|^-1 sum_g conj(d_D chi_D(g)) alpha_g(F)``."""
    return np.tensordot(_weights(sys, D), sys.alpha_all(np.asarray(F, dtype=complex)), axes=1)


def projection_superoperator(sys: MatrixDynamicalSystem, D: int) -> np.ndarray:
    """Matrix of the spectral projection in the algebra's orthonormal coordinates."""
    B = sys.algebra.flat
    K = np.einsum("g,gij,gkl->ikjl", _weights(sys, D), sys.rep, sys.rep.conj())
    n = sys.n
    K = K.reshape(n * n, n * n)
    return B.conj() @ K @ B.T


def fixed_point_algebra(sys: MatrixDynamicalSystem) -> Subalgebra:
    P = projection_superoperator(sys, 0)
    w, V = np.linalg.eigh((P + P.conj().T) / 2)
    cols = V[:, w > 0.5]
    return Subalgebra.span(np.array([sys.algebra.from_coords(c) for c in cols.T]), sys.n)


def commutant_in(space: Subalgebra, mats) -> Subalgebra:
    """Elements of ``space`` commuting with every matrix in ``mats``."""
    blocks = []
    for a in mats:
        cols = [(X @ a - a @ X).reshape(-1) for X in space.basis]
        blocks.append(np.array(cols).T)
    if not blocks:
        return space
    kern = _nullspace(np.vstack(blocks))
    return Subalgebra.span(np.array([space.from_coords(c) for c in kern.T]), space.n)


def relative_commutant(sys: MatrixDynamicalSystem, A: Subalgebra | None = None) -> Subalgebra:
    A = A if A is not None else fixed_point_algebra(sys)
    return commutant_in(sys.algebra, A.basis)


def algebra_center(A: Subalgebra) -> Subalgebra:
    return commutant_in(A, A.basis)


def inner_A(sys: MatrixDynamicalSystem, F: np.ndarray, G: np.ndarray) -> np.ndarray:
    """A-valued scalar product ``Pi_trivial(F G*)``."""
    return spectral_projection(sys, 0, F @ np.asarray(G).conj().T)


def norm_A(sys: MatrixDynamicalSystem, F: np.ndarray) -> float:
    return float(np.sqrt(_opnorm(inner_A(sys, F, F))))


@dataclass
class ParsevalResult:
    residual: float
    reconstruction_residual: float
    nonzero_terms: list[int]


def parseval_check(sys: MatrixDynamicalSystem, F: np.ndarray, *, tol: float = TOL) -> ParsevalResult:
    """Residuals of ``<F,F>_A = sum_D <Pi_D F, Pi_D F>_A`` and ``F = sum_D Pi_D F``."""
    F = np.asarray(F, dtype=complex)
    parts = [spectral_projection(sys, D, F) for D in range(sys.table.rank)]
    lhs = inner_A(sys, F, F)
    rhs = sum(inner_A(sys, P, P) for P in parts)
    scale = max(1.0, _opnorm(F))
    nz = [D for D, P in enumerate(parts) if _opnorm(P) > tol * scale]
    return ParsevalResult(_opnorm(lhs - rhs), _opnorm(F - sum(parts)), nz)


@dataclass
class ProjectionChecks:
    orthogonality: float
    completeness: float
    module: float
    symmetry: float
    samples: int
    seed: int

    def max_residual(self) -> float:
        return max(self.orthogonality, self.completeness, self.module, self.symmetry)


def projection_checks(sys: MatrixDynamicalSystem, *, samples: int = 20, seed: int = 0) -> ProjectionChecks:
    """Residuals of ``Pi_D Pi_D' = delta Pi_D``, ``sum_D Pi_D = id`` (as maps),
    ``Pi_D(a F b) = a Pi_D(F) b`` for ``a, b`` in A, and
    ``<Pi_D F, G>_A = <F, Pi_D G>_A`` on random samples."""
    r = sys.table.rank
    P = [projection_superoperator(sys, D) for D in range(r)]
    orth = 0.0
    for i in range(r):
        for j in range(r):
            target = P[i] if i == j else 0.0
            orth = max(orth, float(np.abs(P[i] @ P[j] - target).max()))
    comp = float(np.abs(sum(P) - np.eye(sys.algebra.dim)).max())
    rng = np.random.default_rng(seed)
    A = fixed_point_algebra(sys)
    mod = sym = 0.0
    for _ in range(samples):
        F = sys.algebra.random_element(rng)
        G = sys.algebra.random_element(rng)
        a, b = A.random_element(rng), A.random_element(rng)
        for D in range(r):
            mod = max(mod, _opnorm(spectral_projection(sys, D, a @ F @ b)
                                   - a @ spectral_projection(sys, D, F) @ b))
            sym = max(sym, _opnorm(inner_A(sys, spectral_projection(sys, D, F), G)
                                   - inner_A(sys, F, spectral_projection(sys, D, G))))
    return ProjectionChecks(orth, comp, mod, sym, samples, seed)


@dataclass
class NormBoundReport:
    samples: int
    seed: int
    max_ratio: dict  # irrep -> max ||Pi_D F|| / ||F||
    bound: dict  # irrep -> d^(3/2)
    max_A_ratio: dict  # irrep -> max |Pi_D F|_A / |F|_A
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def norm_bound_check(sys: MatrixDynamicalSystem, *, samples: int = 100, seed: int = 0,
                     tol: float = TOL) -> NormBoundReport:
    """Sample ``||Pi_D F|| <= d^(3/2) ||F||`` and ``|Pi_D F|_A <= |F|_A``."""
    rng = np.random.default_rng(seed)
    r = sys.table.rank
    dims = sys.table.dims
    ratio = {D: 0.0 for D in range(r)}
    aratio = {D: 0.0 for D in range(r)}
    bound = {D: float(dims[D]) ** 1.5 for D in range(r)}
    bad = []
    for s in range(samples):
        F = sys.algebra.random_element(rng)
        nF, aF = _opnorm(F), norm_A(sys, F)
        for D in range(r):
            PF = spectral_projection(sys, D, F)
            nP, aP = _opnorm(PF), norm_A(sys, PF)
            ratio[D] = max(ratio[D], nP / nF)
            aratio[D] = max(aratio[D], aP / aF if aF > 0 else 0.0)
            if nP > bound[D] * nF + tol:
                bad.append(f"sample {s}, irrep {D}: ||Pi F|| = {nP:.6g} > {bound[D]:.4g} ||F||")
            if aP > aF + tol:
                bad.append(f"sample {s}, irrep {D}: |Pi F|_A = {aP:.6g} > |F|_A = {aF:.6g}")
    return NormBoundReport(samples, seed, ratio, bound, aratio, bad)


# --- algebraic Hilbert spaces and canonical endomorphisms -------------------

def algebraic_hilbert_space(sys: MatrixDynamicalSystem, D: int, *, seed: int = 0,
                            tries: int = 8, tol: float = TOL) -> np.ndarray | None:
    """A unitary ``Phi`` in ``F`` with ``alpha_g(Phi) = chi_D(g) Phi``, or ``None``.

    A random element of the isotypic subspace ``Pi_D F = A Phi`` is invertible
    generically, and its unitary polar factor then lies in ``A Phi`` as well.
    Only abelian groups are accepted: a higher-dimensional Hilbert space of
    isometries with support 1 would consist of unitaries with pairwise
    orthogonal ranges, impossible in finite dimension.
    """
    if not sys.group.is_abelian():
        raise NonAbelianGroup(
            "higher-dimensional algebraic Hilbert spaces with support 1 do not exist in "
            "a finite-dimensional algebra; only abelian groups are supported")
    n = sys.n
    if D == 0:
        return np.eye(n, dtype=complex)
    P = projection_superoperator(sys, D)
    w, V = np.linalg.eigh((P + P.conj().T) / 2)
    cols = V[:, w > 0.5]
    if cols.shape[1] == 0:
        return None
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        c = cols @ (rng.standard_normal(cols.shape[1]) + 1j * rng.standard_normal(cols.shape[1]))
        X = sys.algebra.from_coords(c)
        W, s, Vh = np.linalg.svd(X)
        if s[-1] < RANK_TOL * s[0]:
            continue
        U = W @ Vh
        in_space = _opnorm(spectral_projection(sys, D, U) - U) <= tol * 10
        in_algebra = sys.algebra.contains(U, tol * 10)
        if in_space and in_algebra:
            return U
    return None


@dataclass(frozen=True, eq=False)
class CanonicalEndomorphism:
    """``a -> sum_j Phi_j a Phi_j*`` restricted to the fixed-point algebra."""

    phis: tuple
    domain: Subalgebra

    def __call__(self, a: np.ndarray) -> np.ndarray:
        return sum(P @ a @ P.conj().T for P in self.phis)


def canonical_endomorphism(sys: MatrixDynamicalSystem, *phis: np.ndarray,
                           A: Subalgebra | None = None, tol: float = TOL) -> CanonicalEndomorphism:
    """Raises :class:`NotInvariant` unless the endomorphism maps A into A."""
    A = A if A is not None else fixed_point_algebra(sys)
    rho = CanonicalEndomorphism(tuple(np.asarray(P, dtype=complex) for P in phis), A)
    for a in A.basis:
        if not A.contains(rho(a), tol * 10):
            raise NotInvariant("canonical endomorphism does not preserve the fixed-point algebra")
    return rho


def intertwiner_space(sigma: Callable, tau: Callable, A: Subalgebra) -> np.ndarray:
    """Orthonormal basis ``(k, n, n)`` of ``{X in A : X sigma(a) = tau(a) X}``."""
    blocks = []
    for a in A.basis:
        sa, ta = sigma(a), tau(a)
        blocks.append(np.array([(X @ sa - ta @ X).reshape(-1) for X in A.basis]).T)
    kern = _nullspace(np.vstack(blocks))
    if kern.shape[1] == 0:
        return np.zeros((0, A.n, A.n), dtype=complex)
    return Subalgebra.span(np.array([A.from_coords(c) for c in kern.T]), A.n).basis


def identity_endomorphism(A: Subalgebra) -> CanonicalEndomorphism:
    return CanonicalEndomorphism((np.eye(A.n, dtype=complex),), A)


@dataclass
class MinimalityReport:
    label: str
    dim_fixed: int
    dim_relative_commutant: int
    dim_center: int
    minimal: bool
    hilbert_spaces: dict  # irrep -> bool (unitary found)
    intertwiner_dims: dict  # (D, D') -> dim
    disjoint: bool | None
    biconditional: bool | None

    def to_json(self) -> dict:
        return {
            "system": self.label,
            "dim_A": self.dim_fixed,
            "dim_relative_commutant": self.dim_relative_commutant,
            "dim_center": self.dim_center,
            "minimal": self.minimal,
            "hilbert_spaces": {str(k): v for k, v in self.hilbert_spaces.items()},
            "intertwiner_dims": {f"{a},{b}": v for (a, b), v in self.intertwiner_dims.items()},
            "disjoint": self.disjoint,
            "biconditional": self.biconditional,
        }


def minimality_report(sys: MatrixDynamicalSystem, *, seed: int = 0) -> MinimalityReport:
    """Compare ``A' n F = Z(A)`` with pairwise disjointness of the ``rho_D``.

    The disjointness side is only evaluated for abelian groups where every
    irrep has a unitary in its spectral subspace.
    """
    A = fixed_point_algebra(sys)
    rc = relative_commutant(sys, A)
    Z = algebra_center(A)
    minimal = rc.dim == Z.dim
    hs: dict = {}
    dims: dict = {}
    disjoint = bicond = None
    if sys.group.is_abelian():
        phis = {D: algebraic_hilbert_space(sys, D, seed=seed) for D in range(sys.table.rank)}
        hs = {D: P is not None for D, P in phis.items()}
        if all(hs.values()):
            rhos = {D: canonical_endomorphism(sys, P, A=A) for D, P in phis.items()}
            for D in rhos:
                for E in rhos:
                    if D != E:
                        dims[(D, E)] = intertwiner_space(rhos[D], rhos[E], A).shape[0]
            disjoint = all(v == 0 for v in dims.values())
            bicond = minimal == disjoint
    return MinimalityReport(sys.label, A.dim, rc.dim, Z.dim, minimal, hs, dims, disjoint, bicond)
