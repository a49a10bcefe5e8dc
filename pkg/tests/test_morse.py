import pytest

import oracles
from conftest import as_oracle, cp, matching
from cyclotope.complex import build_cp
from cyclotope.homology import homology_of, theorem2_ranks
from cyclotope.morse import (
    DOWN,
    NOT_CRITICAL,
    TYPE1,
    TYPE2,
    UP,
    build_matching,
    cellular_complex,
    classify_critical,
    critical_count_formula,
    enumerate_critical_labels,
    gradient_paths,
    incidence,
    is_acyclic,
    movable_entries,
    neighbor_frame,
    orientation_sign,
    pair_label,
    principal_vertex,
)
from cyclotope.partitions import LabelError, canonicalize, from_text


@pytest.mark.parametrize("n", [3, 4, 5])
def test_pairing_matches_step_by_step_rule(n):
    cx = cp(n)
    m = matching(n)
    expected = oracles.step_pairing(n)
    for cid, lab in enumerate(cx.labels):
        p = m.partner[cid]
        want = expected.get(as_oracle(lab))
        assert (None if p is None else as_oracle(cx.labels[p])) == want, str(lab)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_critical_cells_are_the_two_types(n):
    cx = cp(n)
    m = matching(n)
    crit = {cx.labels[i] for i in m.critical}
    assert crit == set(enumerate_critical_labels(n))
    for lab in crit:
        o = as_oracle(lab)
        kind = classify_critical(lab)
        assert kind == (TYPE1 if oracles.is_type1(o, n) else TYPE2)
        assert kind != TYPE2 or oracles.is_type2(o, n)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_critical_count_formula(n):
    counts = tuple(critical_count_formula(n, k) for k in range(n - 1))
    assert counts == theorem2_ranks(n)
    assert len(list(enumerate_critical_labels(n))) == sum(counts)


def test_movable_entries_examples():
    lab = from_text("({2}|{4,3}|{1}|{5,6})", 5)
    kinds = {(e.entry, e.kind) for e in movable_entries(lab)}
    assert (2, "forward") in kinds
    assert min(e for e, _ in kinds) == 2
    assert pair_label(lab)[1] == UP
    merged = from_text("({2,4,3}|{1}|{5,6})", 5)
    back, direction = pair_label(merged)
    assert direction == DOWN and back == lab


def test_type1_with_three_parts_is_not_type2():
    lab = from_text("({2}|{1}|{3,4})", 3)
    assert classify_critical(lab) == TYPE1
    assert classify_critical(from_text("({1}|{2}|{3,4})", 3)) == TYPE2
    assert classify_critical(from_text("({1}|{2}|{3}|{4})", 3)) == NOT_CRITICAL


@pytest.mark.parametrize("n", [3, 4, 5])
def test_matching_verified(n):
    m = build_matching(cp(n))
    assert is_acyclic(m.complex, m.partner)


def test_cycle_is_rejected():
    # walk the 1-skeleton of CP_4, pairing each vertex with the edge it leaves by;
    # the walk must revisit a vertex, closing a V-path
    cx = cp(3)
    partner = [None] * len(cx)
    v, came = cx.by_dim[0][0], None
    while partner[v] is None:
        e = next(e for e in cx.by_dim[1] if v in cx.facets[e] and e != came and partner[e] is None)
        partner[v], partner[e] = e, v
        v, came = next(w for w in cx.facets[e] if w != v), e
    assert not is_acyclic(cx, partner)


# ------------------------------------------------------------- orientation

def test_principal_vertex():
    assert str(principal_vertex(canonicalize([{1, 4, 5}, {2, 3, 7}, {6, 8}], 7))) == "({1}|{4}|{5}|{2}|{3}|{7}|{6}|{8})"
    assert str(principal_vertex(from_text("({2,4,3}|{1}|{5,6})", 5))) == "({2}|{3}|{4}|{1}|{5}|{6})"


def test_single_edge_frame():
    frame = neighbor_frame(from_text("({1,2}|{3}|{4})", 3), from_text("({1}|{2}|{3}|{4})", 3))
    assert [str(v) for v in frame.neighbors] == ["({2}|{1}|{3}|{4})"]


def test_frame_rejects_foreign_vertex():
    with pytest.raises(LabelError):
        neighbor_frame(from_text("({1,2}|{3}|{4})", 3), from_text("({3}|{1}|{2}|{4})", 3))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_principal_vertex_is_positive(n):
    for lab in cp(n).labels:
        assert orientation_sign(lab, principal_vertex(lab)) == 1


def test_edge_endpoints_have_opposite_signs():
    cx = cp(4)
    for e in cx.by_dim[1]:
        a, b = cx.facets[e]
        assert incidence(cx.labels[e], cx.labels[a]) == -incidence(cx.labels[e], cx.labels[b])


@pytest.mark.parametrize("n", [3, 4, 5])
def test_cellular_homology(n):
    cc = cellular_complex(cp(n))
    cc.check()
    h = homology_of(cc)
    assert h.betti == theorem2_ranks(n) and h.is_free


# ----------------------------------------------------------------- paths

def test_second_worked_example():
    m = matching(4)
    cx = m.complex
    src = cx.index[from_text("({1}|{2,3}|{4,5})", 4)]
    dst = cx.index[from_text("({3}|{2}|{1}|{4,5})", 4)]
    paths = {p.to_text() for p in gradient_paths(m, src, dst)}
    assert paths == {
        "\n".join([
            "({1}|{2,3}|{4,5})", "({1}|{2}|{3}|{4,5})", "({1,2}|{3}|{4,5})", "({2}|{1}|{3}|{4,5})",
            "({2}|{1,3}|{4,5})", "({2}|{3}|{1}|{4,5})", "({2,3}|{1}|{4,5})", "({3}|{2}|{1}|{4,5})",
        ]),
        "\n".join([
            "({1}|{2,3}|{4,5})", "({1}|{3}|{2}|{4,5})", "({1,3}|{2}|{4,5})", "({3}|{1}|{2}|{4,5})",
            "({3}|{1,2}|{4,5})", "({3}|{2}|{1}|{4,5})",
        ]),
    }


@pytest.mark.parametrize("n", [3, 4])
def test_path_counts_match_oracle(n):
    m = matching(n)
    cx = m.complex
    facets = {as_oracle(cx.labels[c]): {as_oracle(cx.labels[f]) for f in cx.facets[c]} for c in range(len(cx))}
    partner = oracles.step_pairing(n)
    crit = m.critical_by_dim()
    for k in range(1, len(crit)):
        for src in crit[k]:
            for dst in crit[k - 1]:
                want = oracles.gradient_path_count(n, as_oracle(cx.labels[src]), as_oracle(cx.labels[dst]), facets, partner)
                assert len(gradient_paths(m, src, dst)) == want


def test_gradient_paths_need_critical_ends():
    m = matching(3)
    cx = m.complex
    paired = next(i for i in cx.by_dim[1] if not m.is_critical(i))
    with pytest.raises(ValueError):
        gradient_paths(m, paired, cx.by_dim[0][0])


def test_build_is_deterministic():
    a = build_matching(build_cp(4))
    b = build_matching(build_cp(4))
    assert a.partner == b.partner and a.critical == b.critical
