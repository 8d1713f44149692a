import json

import numpy as np
import pytest

from chaingroup import groups
from chaingroup.errors import ParseError
from chaingroup.specs import parse_group, parse_pairs, parse_perm, parse_system


@pytest.mark.parametrize("spec,order,ncls", [
    ("D:8", 8, 5), ("D8", 8, 5), ("Q:8", 8, 5), ("Q:12", 12, 6), ("S:4", 24, 5),
    ("A:4", 12, 4), ("C:6", 6, 6), ("Z5", 5, 5), ("perm:(1 2),(1 2 3)", 6, 3),
    ('perm:"(1 2)(3 4),(1 3)"', 8, 5), ("C:2*D:8", 16, 10), ("C:2*C:2*C:2", 8, 8)])
def test_group_specs(spec, order, ncls):
    G = parse_group(spec)
    assert G.order == order and G.num_classes == ncls


def test_dihedral_spec_is_order():
    assert parse_group("D:8").family == ("dihedral", 4)


@pytest.mark.parametrize("bad", ["", "X:3", "D:7", "Q:10", "D:2", "perm:(1 1)", "C:0"])
def test_bad_group_specs(bad):
    with pytest.raises(ParseError):
        parse_group(bad)


def test_file_spec(tmp_path):
    G = groups.dihedral(3)
    p = tmp_path / "g.json"
    p.write_text(json.dumps(G.to_json()))
    H = parse_group(f"file:{p}")
    assert np.array_equal(G.mul, H.mul)
    with pytest.raises(ParseError):
        parse_group(f"file:{tmp_path / 'missing.json'}")


def test_system_specs():
    assert parse_system("regular:S3").n == 6
    assert parse_system("regular:D:8").n == 8
    assert parse_system("swap-blocks:2").algebra.dim == 8
    assert parse_system("trivial:3").group.order == 1


def test_system_json():
    spec = json.dumps({"group": "C:2", "generators": {"1": [[1, 0], [0, -1]]}})
    sysm = parse_system(spec)
    assert np.allclose(sysm.rep[1], np.diag([1, -1]))
    spec = json.dumps({"group": "C:4", "generators": [[[[0, 1], 0], [0, [0, -1]]]]})
    assert np.allclose(parse_system(spec).rep[1], np.diag([1j, -1j]))


@pytest.mark.parametrize("bad", ["nope:3", "swap-blocks:x", "{bad json", '{"group": "C:2"}'])
def test_bad_system_specs(bad):
    with pytest.raises(ParseError):
        parse_system(bad)


def test_pairs_and_perms():
    assert parse_pairs("0:1,4:2", what="x") == {0: "1", 4: "2"}
    assert parse_pairs("1:(1 2),2:(1 3 2)", what="x") == {1: "(1 2)", 2: "(1 3 2)"}
    assert parse_perm("(1 2)", 3) == (1, 0, 2)
    assert parse_perm("2 0 1") == (2, 0, 1)
    with pytest.raises(ParseError):
        parse_perm("0 0 1")
    with pytest.raises(ParseError):
        parse_pairs("3", what="x")
