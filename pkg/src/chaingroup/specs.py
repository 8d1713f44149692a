"""Parsers for the group-spec and system-spec mini-languages.

Group specs::

    D:8      dihedral group of order 8        Q:12   quaternion group of order 12
    S:4      symmetric group                   A:4    alternating group
    C:6      cyclic group (Z:6 also accepted)  D8, S3, Z5 ...  compact forms
    perm:(1 2),(1 2 3)                         closure of permutation generators
    file:group.json                            {"order", "mul", "names"}
    C:2*D:8                                    direct product

System specs (spectral lab)::

    regular:S3   swap-blocks:2   trivial:3   file:system.json   {...inline JSON...}
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from . import groups
from .errors import ParseError
from .groups import FiniteGroup

_COMPACT = re.compile(r"^([DQSACZ])(\d+)$", re.IGNORECASE)
_KEYED = re.compile(r"^([DQSACZ]):(\d+)$", re.IGNORECASE)


def _family(kind: str, n: int, cap: int) -> FiniteGroup:
    kind = kind.upper()
    if kind == "D":
        if n < 4 or n % 2:
            raise ParseError(f"D:{n}: dihedral order must be even and at least 4")
        return groups.dihedral(n // 2)
    if kind == "Q":
        if n < 8 or n % 4:
            raise ParseError(f"Q:{n}: quaternion order must be a multiple of 4, at least 8")
        return groups.quaternion(n // 4)
    if n < 1:
        raise ParseError(f"{kind}:{n}: size must be positive")
    if kind == "S":
        return groups.symmetric(n, cap=cap)
    if kind == "A":
        return groups.alternating(n, cap=cap)
    return groups.cyclic(n)


def parse_group(spec: str, *, cap: int = groups.DEFAULT_CAP) -> FiniteGroup:
    spec = spec.strip()
    if not spec:
        raise ParseError("empty group spec")
    if spec.startswith("file:"):
        path = Path(spec[5:])
        try:
            obj = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read group file {path}: {exc}") from None
        return groups.from_json(obj, label=path.stem)
    if spec.startswith("perm:"):
        body = spec[5:].strip().strip('"').strip("'")
        gens = re.split(r"\)\s*,\s*\(", body)
        if len(gens) > 1:
            gens = [gens[0] + ")"] + ["(" + g + ")" for g in gens[1:-1]] + ["(" + gens[-1]]
        return groups.from_permutations(gens, cap=cap, label=f"<{body}>")
    if "*" in spec:
        parts = [parse_group(p, cap=cap) for p in spec.split("*")]
        G = parts[0]
        for H in parts[1:]:
            G = groups.direct_product(G, H)
        return G
    m = _KEYED.match(spec) or _COMPACT.match(spec)
    if m:
        return _family(m.group(1), int(m.group(2)), cap)
    raise ParseError(f"unrecognized group spec {spec!r}")


def _matrix(obj) -> np.ndarray:
    def entry(v):
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise ParseError("complex entries must be [re, im]")
            return complex(v[0], v[1])
        return complex(v)

    try:
        return np.array([[entry(v) for v in row] for row in obj], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix: {exc}") from None


def parse_system(spec: str, *, seed: int = 0):
    from . import spectral

    spec = spec.strip()
    if spec.startswith("{"):
        try:
            return _system_from_json(json.loads(spec), seed)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad system JSON: {exc}") from None
    if spec.startswith("file:"):
        try:
            return _system_from_json(json.loads(Path(spec[5:]).read_text()), seed)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read system file: {exc}") from None
    kind, _, arg = spec.partition(":")
    if kind == "regular":
        return spectral.regular_system(parse_group(arg), seed=seed)
    if kind in ("swap-blocks", "trivial"):
        try:
            k = int(arg or 2)
        except ValueError:
            raise ParseError(f"{kind} needs an integer size") from None
        if k < 1:
            raise ParseError(f"{kind} size must be positive")
        if kind == "trivial":
            return spectral.trivial_system(k, seed=seed)
        return spectral.swap_blocks_system(k, seed=seed)
    raise ParseError(f"unrecognized system spec {spec!r}")


def _system_from_json(obj: dict, seed: int):
    """``{"group": spec, "generators": {elem: matrix}, "algebra": "full" | {"blocks": [..]}}``."""
    from . import spectral

    if not isinstance(obj, dict) or "group" not in obj or "generators" not in obj:
        raise ParseError("system JSON needs 'group' and 'generators'")
    G = parse_group(obj["group"]) if isinstance(obj["group"], str) else groups.from_json(obj["group"])
    gens = obj["generators"]
    if isinstance(gens, list):
        gens = {i + 1: M for i, M in enumerate(gens)}
    try:
        images = {int(k): _matrix(v) for k, v in gens.items()}
    except ValueError:
        raise ParseError("generator keys must be element indices") from None
    alg = obj.get("algebra", "full")
    algebra = None
    if isinstance(alg, dict) and "blocks" in alg:
        algebra = spectral.Subalgebra.block_diagonal([int(b) for b in alg["blocks"]])
    elif alg != "full":
        raise ParseError("algebra must be 'full' or {'blocks': [...]}")
    return spectral.from_generators(G, images, algebra, seed=seed, label=obj.get("label", "json"))


def parse_pairs(text: str, *, what: str) -> dict[int, str]:
    """Parse ``"k:v,k:v"`` into ``{int(k): v}`` (values left as strings)."""
    out = {}
    if not text:
        return out
    for item in re.split(r",(?![^()]*\))", text):
        k, sep, v = item.partition(":")
        if not sep:
            raise ParseError(f"bad {what} entry {item!r}; expected key:value")
        try:
            out[int(k)] = v.strip()
        except ValueError:
            raise ParseError(f"bad {what} key {k!r}") from None
    return out


def parse_perm(text: str, size: int | None = None) -> tuple[int, ...]:
    """A permutation of ``0..n-1`` given as ``"1 0 2"`` (images) or 1-based cycles."""
    text = text.strip()
    if text.startswith("(") or text == "":
        p = groups.parse_cycles(text, size)
    else:
        try:
            p = tuple(int(v) for v in re.split(r"[\s;]+", text) if v)
        except ValueError:
            raise ParseError(f"bad permutation {text!r}") from None
    if size is not None:
        if len(p) > size:
            raise ParseError(f"permutation {text!r} moves points beyond {size}")
        p = p + tuple(range(len(p), size))
    if sorted(p) != list(range(len(p))):
        raise ParseError(f"not a permutation: {text!r}")
    return p
