from dataclasses import replace
from fractions import Fraction

import pytest

from quivar.mckay import (McKayError, binary_dihedral_table, cyclic_table,
                          exceptional_table, identify_affine_ade,
                          mckay_graph_quiver, mckay_quiver, table_by_name,
                          verify_ade)
from quivar.quiver import cartan


def all_tables():
    out = [cyclic_table(n) for n in range(1, 7)]
    out += [binary_dihedral_table(n) for n in (2, 3, 4)]
    out += [exceptional_table(k) for k in ("bt", "bo", "bi")]
    return out


def test_orders_and_degree_sums():
    for t in all_tables():
        assert sum(d * d for d in t.degrees) == t.order
        assert t.degrees[t.trivial_index] == 1


def test_orthogonality():
    for t in all_tables():
        k = len(t.chars)
        for i in range(k):
            for j in range(k):
                assert t.inner(i, j) == (Fraction(1) if i == j else Fraction(0))


def test_cyclic_doubles():
    for n in range(2, 7):
        a = mckay_quiver(cyclic_table(n))
        for i in range(n):
            for j in range(n):
                want = int((i - j) % n == 1) + int((j - i) % n == 1)
                if n == 2:
                    want = 2 if i != j else 0
                assert a[i][j] == want


def test_cyclic_one_is_jordan_double():
    # the trivial group sees E as 2 copies of the trivial character
    a = mckay_quiver(cyclic_table(1))
    assert a == [[2]]


def test_expected_types():
    expect = {"cyclic:2": "A~1", "cyclic:3": "A~2", "cyclic:6": "A~5",
              "bd:2": "D~4", "bd:3": "D~5", "bd:4": "D~6",
              "bt": "E~6", "bo": "E~7", "bi": "E~8"}
    for name, kind in expect.items():
        rep = verify_ade(table_by_name(name))
        assert rep["type"] == kind, (name, rep["type"])
        assert rep["kernel_ok"]
        assert rep["trivial_vertex_degree_one"]


def test_delta_vectors():
    assert verify_ade(cyclic_table(4))["delta"] == [1, 1, 1, 1]
    assert sorted(verify_ade(binary_dihedral_table(2))["delta"]) == [1, 1, 1, 1, 2]
    assert sorted(verify_ade(exceptional_table("bi"))["delta"]) == \
        [1, 2, 2, 3, 3, 4, 4, 5, 6]


def test_mckay_cartan_matches_quiver_module():
    # C = 2 Id - A computed from characters equals the Cartan matrix of
    # the graph-quiver built from the same table
    for name in ("cyclic:3", "bd:2", "bt"):
        t = table_by_name(name)
        a = mckay_quiver(t)
        q = mckay_graph_quiver(t)
        assert cartan(q) == [[(2 if i == j else 0) - a[i][j]
                              for j in range(len(a))] for i in range(len(a))]


def test_z2_cartan_example():
    t = cyclic_table(2)
    a = mckay_quiver(t)
    assert [[2 - a[0][0], -a[0][1]], [-a[1][0], 2 - a[1][1]]] == \
        [[2, -2], [-2, 2]]


def test_identify_rejects_non_ade():
    with pytest.raises(McKayError):
        identify_affine_ade([[0, 3], [3, 0]])


def test_corrupted_table_rejected():
    t = exceptional_table("bi")
    # flip one character value: orthogonality must fail validation
    chars = [list(r) for r in t.chars]
    chars[1][2] = t.field.add(chars[1][2], t.field.one())
    with pytest.raises(McKayError):
        replace(t, chars=tuple(tuple(r) for r in chars))


def test_corrupted_chi_e_rejected():
    t = binary_dihedral_table(2)
    e = list(t.chi_e)
    e[0] = t.field.from_int(3)  # degree of E must be 2
    with pytest.raises(McKayError):
        replace(t, chi_e=tuple(e))


def test_unknown_names():
    with pytest.raises(McKayError):
        table_by_name("bx")
