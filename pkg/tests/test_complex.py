import json

import pytest

import oracles
from conftest import as_oracle, cp
from cyclotope.complex import (
    build_cp,
    build_permutohedron,
    check_diamond,
    order_complex,
    to_csv,
    to_dot,
    to_json,
    vertex_of_permutation,
)
from cyclotope.partitions import LabelError


@pytest.mark.parametrize("n,f", [(3, (6, 12)), (4, (24, 60, 50)), (5, (120, 360, 390, 180))])
def test_f_vector(n, f):
    assert cp(n).f_vector() == f


@pytest.mark.parametrize("n", [3, 4, 5])
def test_facets_match_merging_oracle(n):
    cx = cp(n)
    expected = oracles.facets_by_merging(n)
    for cid, lab in enumerate(cx.labels):
        got = {as_oracle(cx.labels[f]) for f in cx.facets[cid]}
        assert got == expected[as_oracle(lab)]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_diamond_property(n):
    assert check_diamond(cp(n)) == []


def test_ids_sorted_by_dimension():
    cx = cp(4)
    dims = [cx.dim_of(i) for i in range(len(cx))]
    assert dims == sorted(dims)


@pytest.mark.parametrize("n", [0, 2, 8])
def test_out_of_range(n):
    with pytest.raises(LabelError):
        build_cp(n)


@pytest.mark.parametrize("n,f", [(2, (2, 1)), (3, (6, 6, 1)), (4, (24, 36, 14, 1))])
def test_permutohedron_f_vector(n, f):
    assert build_permutohedron(n).f_vector() == f
    assert build_permutohedron(n, boundary=True).f_vector() == f[:-1]


@pytest.mark.parametrize("n,f", [(3, (18, 24)), (4, (134, 600, 480))])
def test_order_complex_size(n, f):
    assert order_complex(cp(n)).f_vector() == f


def test_exports():
    cx = cp(3)
    dot = to_dot(cx)
    assert dot.count("--") == 12
    assert dot.count("label=") == 6
    doc = json.loads(to_json(cp(4)))
    assert len(doc["cells"]) == 134
    assert to_csv(cp(4)) == "dim,count\n0,24\n1,60\n2,50\n"
    assert to_json(cp(4)) == to_json(build_cp(4))


def test_vertex_lookup():
    cx = cp(3)
    cid = vertex_of_permutation(cx, (2, 3, 1))
    assert str(cx.labels[cid]) == "({2}|{3}|{1}|{4})"
