"""Chain-group actions on a finite commutative algebra ``Z = C(Gamma)``.

Automorphisms of ``C(Gamma)`` for finite ``Gamma`` are point permutations, so a
chain homomorphism is a map from chain classes to permutations of
``0..|Gamma|-1``. A permutation ``p`` acts on functions by ``Z -> Z o p^-1``,
which makes ``alpha_p alpha_q = alpha_{p o q}``.

Isotypical projections are tracked only through their class-aggregated
weights ``sum m(D) d(D)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .chain import ChainGroup
from .errors import NotAHomomorphism, NotUnitary, UnknownIrrep

Perm = tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """``p o q`` (apply ``q`` first)."""
    return tuple(p[i] for i in q)


def act(p: Perm, Z: np.ndarray) -> np.ndarray:
    """``Z o p^-1``: the value at ``x`` moves to ``p[x]``. Acts on the last axis."""
    Z = np.asarray(Z)
    out = np.empty_like(Z)
    out[..., list(p)] = Z
    return out


@dataclass(frozen=True)
class CenterModel:
    gamma_size: int

    def __post_init__(self):
        if self.gamma_size < 1:
            raise ValueError("gamma_size must be at least 1")

    def constant(self, value=1.0) -> np.ndarray:
        return np.full(self.gamma_size, value, dtype=complex)

    def indicator(self, x: int) -> np.ndarray:
        f = np.zeros(self.gamma_size, dtype=complex)
        f[x] = 1
        return f


@dataclass(frozen=True, eq=False)
class ChainHomomorphism:
    chain: ChainGroup
    perms: tuple[Perm, ...]  # indexed by chain class

    @property
    def gamma_size(self) -> int:
        return len(self.perms[0])

    def __call__(self, cls: int) -> Perm:
        return self.perms[cls]

    def is_trivial_on(self, classes) -> bool:
        ident = tuple(range(self.gamma_size))
        return all(self.perms[c] == ident for c in classes)

    @classmethod
    def from_mapping(cls, chain: ChainGroup, mapping: Mapping[int, Perm],
                     gamma_size: int | None = None) -> "ChainHomomorphism":
        """Build from a partial map; classes not listed must be forced by the
        homomorphism property (products of listed ones) or default to identity
        when the listed classes generate nothing more.

        Raises :class:`NotAHomomorphism` when the completed map is inconsistent.
        """
        if gamma_size is None:
            gamma_size = len(next(iter(mapping.values()))) if mapping else 1
        ident = tuple(range(gamma_size))
        known: dict[int, Perm] = {chain.identity_class: ident}
        for c, p in mapping.items():
            p = tuple(int(v) for v in p)
            if sorted(p) != list(ident):
                raise NotAHomomorphism(f"image of class {c} is not a permutation of {gamma_size} points")
            if c in known and known[c] != p:
                raise NotAHomomorphism("identity class must map to the identity permutation")
            known[int(c)] = p
        # close under products
        frontier = list(known)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(known):
                    for x, y in ((a, b), (b, a)):
                        c = int(chain.product[x, y])
                        p = compose(known[x], known[y])
                        if c not in known:
                            known[c] = p
                            nxt.append(c)
                        elif known[c] != p:
                            raise NotAHomomorphism(
                                f"h([{x}][{y}]) != h([{x}]) o h([{y}])")
            frontier = nxt
        perms = tuple(known.get(c, ident) for c in range(chain.order))
        h = cls(chain, perms)
        h.check()
        return h

    @classmethod
    def trivial(cls, chain: ChainGroup, gamma_size: int) -> "ChainHomomorphism":
        ident = tuple(range(gamma_size))
        return cls(chain, tuple(ident for _ in range(chain.order)))

    @classmethod
    def regular(cls, chain: ChainGroup) -> "ChainHomomorphism":
        """Chain group acting on itself by translation (``Gamma`` = classes)."""
        k = chain.order
        return cls(chain, tuple(tuple(int(chain.product[c, x]) for x in range(k))
                                for c in range(k)))

    def check(self) -> None:
        C = self.chain
        ident = tuple(range(self.gamma_size))
        if self.perms[C.identity_class] != ident:
            raise NotAHomomorphism("identity class must act trivially")
        for a in range(C.order):
            for b in range(C.order):
                if self.perms[int(C.product[a, b])] != compose(self.perms[a], self.perms[b]):
                    raise NotAHomomorphism(f"h([{a}][{b}]) != h([{a}]) o h([{b}])")

    def to_json(self) -> dict:
        return {"gamma": self.gamma_size, "perms": [list(p) for p in self.perms]}


def multiplicity_vector(ring_rank: int, items: Mapping[int, int]) -> np.ndarray:
    m = np.zeros(ring_rank, dtype=np.int64)
    for i, k in items.items():
        if not 0 <= int(i) < ring_rank:
            raise UnknownIrrep(f"irrep index {i} outside 0..{ring_rank - 1}")
        if k < 0:
            raise ValueError("multiplicities must be nonnegative")
        m[int(i)] += int(k)
    return m


def _as_mult(h: ChainHomomorphism, lam) -> np.ndarray:
    r = h.chain.ring.rank
    if isinstance(lam, Mapping):
        return multiplicity_vector(r, lam)
    lam = np.asarray(lam, dtype=np.int64)
    if lam.shape != (r,):
        raise UnknownIrrep(f"multiplicity vector must have length {r}")
    if (lam < 0).any():
        raise ValueError("multiplicities must be nonnegative")
    return lam


@dataclass
class ClassTerm:
    cls: int
    function: np.ndarray
    weight: int


@dataclass
class MergedTerm:
    classes: tuple[int, ...]
    function: np.ndarray
    weight: int


def _fn_json(f: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in f]


@dataclass
class CentralActionResult:
    terms: list[ClassTerm]
    total_weight: int

    @property
    def entries(self) -> list[MergedTerm]:
        """Terms with equal transformed functions summed: the actual value of
        ``lambda(Z)`` as a combination of distinct functions."""
        out: list[MergedTerm] = []
        for t in self.terms:
            for k, e in enumerate(out):
                if np.array_equal(e.function, t.function):
                    out[k] = MergedTerm(e.classes + (t.cls,), e.function, e.weight + t.weight)
                    break
            else:
                out.append(MergedTerm((t.cls,), t.function, t.weight))
        return out

    @property
    def central(self) -> bool:
        """``lambda(Z)`` is again in Z: all classes move Z to the same function."""
        return len(self.entries) == 1

    def to_json(self) -> dict:
        return {
            "central": self.central,
            "total_weight": self.total_weight,
            "terms": [{"class": t.cls, "weight": t.weight, "function": _fn_json(t.function)}
                      for t in self.terms],
            "entries": [{"classes": list(e.classes), "weight": e.weight,
                         "function": _fn_json(e.function)} for e in self.entries],
        }


def action_on_center(lam, h: ChainHomomorphism, Z: np.ndarray) -> CentralActionResult:
    """Class decomposition of ``lambda(Z)``: one term per chain class meeting
    the support of ``lambda``, carrying ``alpha_[D](Z)`` and the weight
    ``sum_{D' in [D]} m(D') d(D')``."""
    m = _as_mult(h, lam)
    Z = np.asarray(Z, dtype=complex)
    if Z.shape != (h.gamma_size,):
        raise ValueError(f"function must have length {h.gamma_size}")
    C = h.chain
    d = C.ring.dims
    terms = []
    for c, members in enumerate(C.classes):
        w = int(sum(m[i] * d[i] for i in members))
        if w:
            terms.append(ClassTerm(c, act(h(c), Z), w))
    return CentralActionResult(terms, int(m @ d))


@dataclass
class ConsistencyResult:
    ok: bool
    counterexample: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def composition_consistency(lam, mu, h: ChainHomomorphism, Zs=None, *,
                            seed: int = 0, samples: int = 3) -> ConsistencyResult:
    """Check that the classes in ``lambda o mu`` are exactly the pairwise class
    products and that ``alpha`` composes along them on sampled functions."""
    a = _as_mult(h, lam)
    b = _as_mult(h, mu)
    C = h.chain
    R = C.ring
    ab = R.fuse(a, b)
    occurring = {int(C.partition[k]) for k in np.flatnonzero(ab)}
    ca = {int(C.partition[i]) for i in np.flatnonzero(a)}
    cb = {int(C.partition[j]) for j in np.flatnonzero(b)}
    expected = {int(C.product[p, q]) for p in ca for q in cb}
    if occurring != expected:
        return ConsistencyResult(False, {"kind": "classes", "occurring": sorted(occurring),
                                         "expected": sorted(expected)})
    if int(ab @ R.dims) != int(a @ R.dims) * int(b @ R.dims):
        return ConsistencyResult(False, {"kind": "dimension"})
    if Zs is None:
        rng = np.random.default_rng(seed)
        Zs = rng.standard_normal((samples, h.gamma_size)) + 1j * rng.standard_normal((samples, h.gamma_size))
    for Z in Zs:
        for i in np.flatnonzero(a):
            for j in np.flatnonzero(b):
                for k in R.support(int(i), int(j)):
                    lhs = act(h(int(C.partition[k])), Z)
                    rhs = act(h(int(C.partition[i])), act(h(int(C.partition[j])), Z))
                    if not np.array_equal(lhs, rhs):
                        return ConsistencyResult(False, {"kind": "composition", "pair": (int(i), int(j)),
                                                         "output": int(k)})
    return ConsistencyResult(True)


def _check_unitary(U: np.ndarray, tol: float) -> None:
    """``U`` has shape ``(k, k, |Gamma|)``; unitary at every point."""
    k = U.shape[0]
    M = np.moveaxis(U, -1, 0)
    eye = np.eye(k)
    if (np.abs(M @ M.conj().transpose(0, 2, 1) - eye).max() > tol
            or np.abs(M.conj().transpose(0, 2, 1) @ M - eye).max() > tol):
        raise NotUnitary("module basis change is not unitary over Z")


def _matmul_pointwise(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return np.einsum("ijx,jkx->ikx", X, Y)


def _adjoint(X: np.ndarray) -> np.ndarray:
    return X.conj().transpose(1, 0, 2)


def symmetry_obstruction(h: ChainHomomorphism, class_a: int, class_b: int,
                         ZA: np.ndarray, ZB: np.ndarray, *, tol: float = 1e-9) -> bool:
    """True iff the module basis changes ``ZA`` (for the class-``a`` space) and
    ``ZB`` (class ``b``) leave the permutation symmetry unchanged::

        alpha_b(ZA) ZA* = 1   and   ZB alpha_a(ZB*) = 1

    with ``alpha`` applied entrywise. Matrices have shape ``(k, k, |Gamma|)``.
    Raises :class:`NotUnitary` if either is not unitary pointwise.
    """
    ZA = np.asarray(ZA, dtype=complex)
    ZB = np.asarray(ZB, dtype=complex)
    for U in (ZA, ZB):
        if U.ndim != 3 or U.shape[0] != U.shape[1] or U.shape[2] != h.gamma_size:
            raise NotUnitary("expected a (k, k, |Gamma|) matrix of functions")
        _check_unitary(U, tol)
    first = _matmul_pointwise(act(h(class_b), ZA), _adjoint(ZA))
    second = _matmul_pointwise(ZB, act(h(class_a), _adjoint(ZB)))
    eyeA = np.eye(ZA.shape[0])[:, :, None]
    eyeB = np.eye(ZB.shape[0])[:, :, None]
    return bool(np.abs(first - eyeA).max() <= tol and np.abs(second - eyeB).max() <= tol)


def random_unitary_functions(k: int, gamma: int, rng: np.random.Generator) -> np.ndarray:
    """A ``(k, k, gamma)`` matrix of functions, Haar-random unitary at each point."""
    out = np.empty((k, k, gamma), dtype=complex)
    for x in range(gamma):
        A = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
        Q, R = np.linalg.qr(A)
        out[:, :, x] = Q * (np.diag(R) / np.abs(np.diag(R)))
    return out


def admissible_arrow_rank(sigma, tau) -> int:
    """``sum_rho m(rho, sigma) m(rho, tau)``: free-module rank of the arrow
    space over ``sigma(Z)`` and the dimension of its admissible part."""
    s = np.asarray(sigma, dtype=np.int64)
    t = np.asarray(tau, dtype=np.int64)
    if s.shape != t.shape:
        raise UnknownIrrep("multiplicity vectors have different lengths")
    return int(s @ t)
