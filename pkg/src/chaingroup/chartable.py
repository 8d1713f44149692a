"""Complex character tables by simultaneous diagonalization of class matrices.

Central characters ``omega(C_i) = |C_i| chi(g_i) / chi(e)`` form a common
eigenvector of the class-multiplication matrices; a random real combination
separates all of them at once. Values are double precision; the integral
quantities (dimensions) are rounded and the orthogonality residual is checked
so float error becomes an exception rather than a wrong table.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DegenerateSpectrum, NotCentral, NumericalResidual, UnknownIrrep
from .groups import FiniteGroup, center, subgroup

DEFAULT_TOL = 1e-6
MAX_REDRAWS = 32
_ROUND = 6


@dataclass(frozen=True)
class Irrep:
    dim: int
    values: np.ndarray


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """``values[i, k]`` is the character of irrep ``i`` on class ``k``."""

    group: FiniteGroup
    dims: np.ndarray
    values: np.ndarray
    names: tuple[str, ...]
    residual: float = 0.0

    @property
    def rank(self) -> int:
        return len(self.dims)

    @property
    def irreps(self) -> list[Irrep]:
        return [Irrep(int(d), row) for d, row in zip(self.dims, self.values)]

    def character(self, D: int, g: int) -> complex:
        """Character of irrep ``D`` at group element ``g``."""
        return complex(self.values[self._check(D), self.group.class_of[g]])

    def on_elements(self) -> np.ndarray:
        """``(rank, order)`` array of character values on every element."""
        return self.values[:, self.group.class_of]

    def conjugate_index(self, D: int) -> int:
        """Irrep whose character is the complex conjugate of ``D``'s."""
        target = np.conj(self.values[self._check(D)])
        dist = np.abs(self.values - target).max(axis=1)
        return int(np.argmin(dist))

    def _check(self, D: int) -> int:
        if not 0 <= D < self.rank:
            raise UnknownIrrep(f"irrep index {D} outside 0..{self.rank - 1}")
        return D

    def to_json(self) -> dict:
        return {
            "dims": self.dims.tolist(),
            "classes": [list(c) for c in self.group.classes],
            "names": list(self.names),
            "values": [[[float(z.real), float(z.imag)] for z in row] for row in self.values],
        }


def class_matrices(G: FiniteGroup) -> np.ndarray:
    """``a[i, j, k]`` = number of ``(x, y)`` in ``C_i x C_j`` with ``xy`` equal to
    the representative of ``C_k``."""
    return kernels.class_coefficients(G.mul, G.inv, G.class_of, G.class_reps)


def _separated(eigvals: np.ndarray, tol: float) -> bool:
    if len(eigvals) < 2:
        return True
    d = np.abs(eigvals[:, None] - eigvals[None, :])
    np.fill_diagonal(d, np.inf)
    scale = max(1.0, float(np.abs(eigvals).max()))
    return float(d.min()) > tol * scale


def _clean(x: np.ndarray) -> np.ndarray:
    return np.round(x, _ROUND) + 0.0  # folds -0.0


def _irrep_names(dims: Sequence[int]) -> tuple[str, ...]:
    seen: dict[int, int] = {}
    out = []
    for d in dims:
        k = seen.get(d, 0)
        seen[d] = k + 1
        suffix = string.ascii_lowercase[k] if k < 26 else f"_{k}"
        out.append(f"{d}{suffix}")
    return tuple(out)


def character_table(G: FiniteGroup, *, seed: int = 0, tol: float = DEFAULT_TOL,
                    max_redraws: int = MAX_REDRAWS) -> CharacterTable:
    """Compute the irreducible characters of ``G``.

    Irreps are ordered by ascending dimension, then by the rounded character
    values over classes in descending lexicographic order (real parts, then
    imaginary parts), which puts the trivial character at index 0.
    """
    r = G.num_classes
    sizes = G.class_sizes.astype(float)
    a = class_matrices(G).astype(float)
    rng = np.random.default_rng(seed)
    for _ in range(max_redraws):
        c = rng.uniform(-1.0, 1.0, size=r)
        A = np.tensordot(c, a, axes=(0, 0))  # sum_i c_i a[i, :, :]
        eigvals, vecs = np.linalg.eig(A)
        if _separated(eigvals, 1e-7) and np.abs(vecs[0]).min() > 1e-12:
            break
    else:
        raise DegenerateSpectrum(
            f"{max_redraws} random class-matrix combinations failed to separate eigenspaces")
    w = (vecs / vecs[0]).T  # row s: central character omega_s over classes
    norm = (np.abs(w) ** 2 / sizes).sum(axis=1)
    dims_f = np.sqrt(G.order / norm)
    dims = np.rint(dims_f).astype(np.int64)
    if np.abs(dims_f - dims).max() > tol or (dims < 1).any():
        raise NumericalResidual(f"irrep dimensions not integral: {dims_f}")
    chars = dims[:, None] * w / sizes[None, :]

    keys = []
    for d, row in zip(dims.tolist(), chars):
        keys.append((d, tuple(-_clean(row.real)), tuple(-_clean(row.imag))))
    order = sorted(range(r), key=lambda s: keys[s])
    chars = chars[order]
    dims = dims[order]

    gram = (chars * sizes) @ chars.conj().T / G.order
    residual = float(np.abs(gram - np.eye(r)).max())
    col = chars.conj().T @ chars
    col_residual = float(np.abs(col - np.diag(G.order / sizes)).max())
    residual = max(residual, col_residual)
    if residual > tol:
        raise NumericalResidual(f"orthogonality residual {residual:.3e} exceeds {tol:g}")
    if int((dims ** 2).sum()) != G.order:
        raise NumericalResidual("sum of squared dimensions differs from group order")
    chars.setflags(write=False)
    dims.setflags(write=False)
    return CharacterTable(G, dims, chars, _irrep_names(dims.tolist()), residual)


def central_character_matrix(T: CharacterTable, Z: Sequence[int]) -> np.ndarray:
    """``U[D, j]``: scalar of irrep ``D`` at central element ``Z[j]``."""
    G = T.group
    Z = list(Z)
    if Z and not (G.mul[Z] == G.mul[:, Z].T).all():
        raise NotCentral("not every listed element is central")
    return T.values[:, G.class_of[Z]] / T.dims[:, None]


def central_character(T: CharacterTable, D: int, c: int) -> complex:
    """Scalar by which central element ``c`` acts in irrep ``D``."""
    G = T.group
    if not (G.mul[c] == G.mul[:, c]).all():
        raise NotCentral(f"element {G.names[c]} is not central")
    return T.character(D, c) / int(T.dims[D])


@dataclass(frozen=True, eq=False)
class CenterDual:
    """Character group of the center with its pairing against central elements.

    ``values[k, j]`` is character ``k`` evaluated at ``center[j]``.
    """

    group: FiniteGroup
    center: tuple[int, ...]
    values: np.ndarray

    def pairing(self, k: int, c: int) -> complex:
        return complex(self.values[k, self.center.index(c)])

    def index_of(self, vec, atol: float = 1e-9) -> int | None:
        """Index of the character with values ``vec`` on the center, if any."""
        dist = np.abs(self.values - np.asarray(vec)[None, :]).max(axis=1)
        k = int(np.argmin(dist))
        return k if dist[k] <= atol else None


def dual_of_center(G: FiniteGroup, *, seed: int = 0) -> CenterDual:
    Z = center(G)
    H = subgroup(G, Z, label=f"Z({G.label})")
    T = character_table(H, seed=seed)
    vals = T.on_elements()  # H element order == sorted Z
    k = T.rank
    mul = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        # <chi_i chi_j, chi_l> is 1 for exactly one l
        ip = (vals[i][None, :] * vals) @ vals.conj().T / k
        mul[i] = np.argmax(ip.real, axis=1)
        if np.abs(ip[np.arange(k), mul[i]] - 1).max() > 1e-9:
            raise NumericalResidual("product of central characters is not a character")
    names = [f"psi{i}" for i in range(k)]
    inv = np.argmax(mul == 0, axis=1)
    from .groups import _assemble

    dual = _assemble(mul, 0, inv, names, f"dual(Z({G.label}))", None)
    vals = np.array(vals)
    vals.setflags(write=False)
    return CenterDual(dual, tuple(Z), vals)


# --- closed-form tables, used as an independent oracle --------------------

def analytic_characters(G: FiniteGroup) -> np.ndarray | None:
    """Closed-form character rows (unordered, on class representatives) for
    the cyclic, dihedral and quaternion families; ``None`` otherwise."""
    if G.family is None:
        return None
    kind = G.family[0]
    reps = G.class_reps
    if kind == "cyclic":
        n = G.family[1]
        j = np.arange(n)[:, None]
        return np.exp(2j * np.pi * j * reps[None, :] / n)
    if kind not in ("dihedral", "quaternion"):
        return None
    m = G.family[1]
    h = m if kind == "dihedral" else 2 * m  # order of a
    i = reps % h
    isb = reps >= h
    rows = []
    if kind == "dihedral":
        rs = [1, -1] if m % 2 == 0 else [1]
        for r in rs:
            for s in (1, -1):
                rows.append(np.where(isb, s * r ** i, r ** i).astype(complex))
        for k in range(1, (m - 1) // 2 + 1 if m % 2 else m // 2):
            rows.append(np.where(isb, 0.0, 2 * np.cos(2 * np.pi * k * i / m)).astype(complex))
    else:
        # abelianization: a -> r, b -> s with r^2 = 1, s^2 = r^m
        for r in (1, -1):
            for s0 in (1, -1):
                s = s0 * (1j if (r == -1 and m % 2) else 1)
                rows.append(np.where(isb, s * complex(r) ** i, complex(r) ** i))
        for k in range(1, m):
            rows.append(np.where(isb, 0.0, 2 * np.cos(np.pi * k * i / m)).astype(complex))
    return np.array(rows)


def same_rows(A: np.ndarray, B: np.ndarray, atol: float = 1e-9) -> bool:
    """True if ``A`` and ``B`` hold the same rows up to permutation."""
    if A.shape != B.shape:
        return False
    used = set()
    for row in A:
        dist = np.abs(B - row[None, :]).max(axis=1)
        hits = [k for k in np.flatnonzero(dist <= atol).tolist() if k not in used]
        if not hits:
            return False
        used.add(hits[0])
    return True
