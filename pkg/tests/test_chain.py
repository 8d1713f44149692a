import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chaingroup import groups
from chaingroup.chain import (chain_group, classify_abelian, eta_check,
                              partition_by_central_character, structure_name)
from chaingroup.chartable import character_table
from chaingroup.fusion import fusion_coefficients
from chaingroup.reproduce import dihedral_expected_classes, dihedral_labels


def chain_of(G):
    return chain_group(fusion_coefficients(character_table(G)))


def cyclic_table(n):
    return (np.arange(n)[:, None] + np.arange(n)[None, :]) % n


def product_table(*ns):
    idx = np.array(np.meshgrid(*[np.arange(n) for n in ns], indexing="ij")).reshape(len(ns), -1).T
    k = len(idx)
    pos = {tuple(r): i for i, r in enumerate(idx.tolist())}
    mods = np.array(ns)
    return np.array([[pos[tuple(((idx[i] + idx[j]) % mods).tolist())] for j in range(k)]
                     for i in range(k)])


def invariant_factors_ref(ns):
    # Smith form of diag(ns) via prime-power decomposition
    from collections import defaultdict
    pp = defaultdict(list)
    for n in ns:
        x, p = n, 2
        while x > 1:
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            if e:
                pp[p].append(p ** e)
            p += 1
    length = max((len(v) for v in pp.values()), default=0)
    out = [1] * length
    for p, v in pp.items():
        v = sorted(v, reverse=True)
        for i, q in enumerate(v):
            out[length - 1 - i] *= q
    return [d for d in out if d > 1]


def test_classify_small():
    assert classify_abelian(cyclic_table(2)) == [2]
    assert classify_abelian(product_table(2, 2)) == [2, 2]
    assert classify_abelian(cyclic_table(6)) == [6]
    assert classify_abelian(cyclic_table(1)) == []
    assert structure_name([]) == "trivial"
    assert structure_name([2, 4]) == "Z2 x Z4"


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 8), min_size=1, max_size=3))
def test_classify_products(ns):
    if math.prod(ns) > 300:
        return
    f = classify_abelian(product_table(*ns))
    assert math.prod(f) == math.prod(ns)
    assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))
    assert f == invariant_factors_ref(ns)


@pytest.mark.parametrize("m", [4, 6, 8, 10, 12])
def test_dihedral_even_memberships(m):
    G = groups.dihedral(m)
    T = character_table(G)
    C = chain_group(fusion_coefficients(T))
    names = dihedral_labels(T)
    got = sorted(sorted(names[i] for i in c) for c in C.classes)
    assert got == sorted(sorted(c) for c in dihedral_expected_classes(m))
    assert C.structure == "Z2"


def test_d8_and_d12_class_names():
    assert chain_of(groups.dihedral(4)).class_names() == [["1a", "1b", "1c", "1d"], ["2a"]]
    C = chain_of(groups.dihedral(6))
    assert C.order == 2 and C.identity_class == 0


@pytest.mark.parametrize("G,expected", [
    (groups.dihedral(3), "trivial"), (groups.dihedral(5), "trivial"), (groups.dihedral(7), "trivial"),
    (groups.quaternion(2), "Z2"), (groups.quaternion(5), "Z2"),
    (groups.symmetric(3), "trivial"), (groups.symmetric(4), "trivial"),
    (groups.alternating(4), "trivial"), (groups.cyclic(6), "Z6"),
    (groups.direct_product(groups.cyclic(2), groups.dihedral(4)), "Z2 x Z2"),
], ids=lambda x: getattr(x, "label", x))
def test_structures(G, expected):
    assert chain_of(G).structure == expected


@pytest.mark.parametrize("G", [groups.dihedral(4), groups.dihedral(6), groups.quaternion(3),
                               groups.symmetric(4), groups.alternating(4), groups.cyclic(12),
                               groups.direct_product(groups.quaternion(2), groups.cyclic(3))],
                         ids=lambda g: g.label)
def test_eta_and_oracle(G):
    cert = eta_check(G)
    assert cert.ok
    assert np.array_equal(partition_by_central_character(character_table(G)), cert.chain.partition)
    assert cert.chain.order == len(groups.center(G))
    assert np.allclose(np.abs(cert.pairing), 1)


def test_identity_and_inverse_tables():
    C = chain_of(groups.cyclic(5))
    k = C.order
    assert all(C.product[C.identity_class, p] == p for p in range(k))
    assert all(C.product[p, C.inverse[p]] == C.identity_class for p in range(k))
    assert np.array_equal(C.product, C.product.T)


def test_chain_class_product_well_defined():
    R = fusion_coefficients(character_table(groups.quaternion(4)))
    C = chain_group(R)
    for i in range(R.rank):
        for j in range(R.rank):
            target = C.product[C.partition[i], C.partition[j]]
            assert {int(C.partition[k]) for k in R.support(i, j)} == {int(target)}
