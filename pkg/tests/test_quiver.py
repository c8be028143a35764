import random

import pytest

from quivar.quiver import (QuiverError, adjacency, aq_form, cartan,
                           cartan_form, cb_frame, cycles, dims, dot, double,
                           frame, jordan_quiver, make_quiver, opposite,
                           quiver_from_json, quiver_to_json, star_pairs,
                           type_a_quiver)


def test_adjacency_examples():
    assert adjacency(jordan_quiver()) == [[1]]
    a2 = type_a_quiver(2)
    assert adjacency(a2) == [[0, 1], [0, 0]]
    assert adjacency(make_quiver(["a", "b"], [])) == [[0, 0], [0, 0]]


def test_adjacency_opposite_transpose():
    a3 = type_a_quiver(3)
    at = adjacency(opposite(a3))
    a = adjacency(a3)
    assert at == [list(r) for r in zip(*a)]


def test_double_counts_and_star_pairs():
    d = double(type_a_quiver(2))
    assert len(d.vertices) == 2 and len(d.edges) == 2
    assert star_pairs(d) == {"a1": "a1*"}
    dj = double(jordan_quiver())
    assert len(dj.edges) == 2
    with pytest.raises(QuiverError):
        star_pairs(jordan_quiver())


def test_double_orientation_independent():
    a3 = type_a_quiver(3)
    assert adjacency(double(a3)) == adjacency(double(opposite(a3)))


def test_framings():
    fj = frame(jordan_quiver())
    assert len(fj.vertices) == 2 and len(fj.edges) == 2
    q = cb_frame(type_a_quiver(2), {"1": 1, "2": 0})
    assert len(q.vertices) == 3 and len(q.edges) == 2
    q0 = cb_frame(type_a_quiver(2), {"1": 0, "2": 0})
    assert "inf" in q0.vertices and len(q0.edges) == 1


def test_cartan_examples():
    assert cartan(type_a_quiver(2)) == [[2, -1], [-1, 2]]
    assert cartan(jordan_quiver()) == [[0]]
    assert cartan(type_a_quiver(3)) == cartan(opposite(type_a_quiver(3)))


def test_cartan_doubling_identity():
    rng = random.Random(0)
    for q in (jordan_quiver(), type_a_quiver(2), type_a_quiver(3)):
        d = double(q)
        for _ in range(20):
            v = {k: rng.randint(0, 4) for k in q.vertices}
            assert aq_form(d, v, v) == 2 * aq_form(q, v, v)
            assert 2 * dot(v, v) - aq_form(d, v, v) == cartan_form(q, v, v)


def test_dims_jordan():
    d = dims(jordan_quiver(), {"0": 3}, {"0": 1})
    assert d["dim_rep"] == 9
    assert d["dim_gv"] == 9
    assert d["p_v"] == 1
    assert d["nakajima_dim"] == 6


def test_dims_one_vertex():
    a1 = make_quiver(["1"], [])
    for r in range(6):
        for k in range(r + 1):
            assert dims(a1, {"1": k}, {"1": r})["nakajima_dim"] == 2 * k * (r - k)


def test_dims_zero_vector():
    d = dims(type_a_quiver(2), {"1": 0, "2": 0}, {"1": 0, "2": 0})
    assert d["dim_rep"] == 0 and d["dim_gv"] == 0 and d["nakajima_dim"] == 0


def test_dimvector_validation():
    with pytest.raises(QuiverError):
        dims(type_a_quiver(2), {"1": 1})
    with pytest.raises(QuiverError):
        dims(type_a_quiver(2), {"1": 1, "2": -1})


def test_cycles_acyclic():
    for maxlen in (1, 2, 5):
        assert cycles(type_a_quiver(3), maxlen) == []


def test_cycles_jordan():
    out = cycles(jordan_quiver(), 3)
    assert [len(c) for c in out] == [1, 2, 3]


def test_cycles_double_a2():
    out = cycles(double(type_a_quiver(2)), 2)
    assert len(out) == 2  # the 2-cycle based at each of its two vertices


def test_json_roundtrip():
    q = double(type_a_quiver(2))
    assert quiver_from_json(quiver_to_json(q)) == q
    assert quiver_from_json(quiver_to_json(q)).provenance == q.provenance


def test_duplicate_labels_rejected():
    with pytest.raises(QuiverError):
        make_quiver(["a", "a"], [])
    with pytest.raises(QuiverError):
        make_quiver(["a"], [("e", "a", "a"), ("e", "a", "a")])
    with pytest.raises(QuiverError):
        make_quiver(["a"], [("e", "a", "b")])
