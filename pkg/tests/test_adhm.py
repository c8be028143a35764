import random
from fractions import Fraction
from itertools import combinations

import pytest

from quivar.adhm import (AdhmData, AdhmError, calogero_moser_check,
                         count_codim2_ideals_f2, count_hilbert_orbits_f2_n2,
                         ideal_from_triple, is_hilbert_point, is_order_ideal,
                         joint_spectrum, monomials_upto, power_traces,
                         triple_from_staircase)
from quivar.fields import CyclotomicField, PrimeField, QQ
from quivar.linalg import Mat


def qmat(rows):
    return Mat.from_ints(QQ, rows)


def all_staircases(n):
    """All order ideals of size n inside the degree-n triangle."""
    cells = monomials_upto(n)
    return [set(c) for c in combinations(cells, n) if is_order_ideal(c)]


def test_monomial_order():
    # deglex with x < y: within a degree, pure x powers come first
    assert monomials_upto(2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_hilbert_point_detection():
    d = AdhmData(2, qmat([[0, 1], [0, 0]]), qmat([[0, 0], [0, 0]]),
                 qmat([[0], [1]]), qmat([[0, 0]]), QQ)
    assert is_hilbert_point(d)
    # non-commuting pair
    bad = AdhmData(2, qmat([[0, 1], [0, 0]]), qmat([[0, 0], [1, 0]]),
                   qmat([[0], [1]]), qmat([[0, 0]]), QQ)
    assert not is_hilbert_point(bad)
    # non-cyclic i
    notcyc = AdhmData(2, qmat([[0, 0], [0, 0]]), qmat([[0, 0], [0, 0]]),
                      qmat([[1], [0]]), qmat([[0, 0]]), QQ)
    assert not is_hilbert_point(notcyc)
    # nonzero j
    withj = AdhmData(2, qmat([[0, 1], [0, 0]]), qmat([[0, 0], [0, 0]]),
                     qmat([[0], [1]]), qmat([[1, 0]]), QQ)
    assert not is_hilbert_point(withj)


def test_ideal_example():
    d = AdhmData(2, qmat([[0, 1], [0, 0]]), qmat([[0, 0], [0, 0]]),
                 qmat([[0], [1]]), qmat([[0, 0]]), QQ)
    view = ideal_from_triple(d)
    assert view.staircase == ((0, 0), (1, 0))
    assert view.leading_terms == ((0, 1), (2, 0))
    assert view.codim == 2


def test_staircase_roundtrip_all_small():
    # every order ideal of size <= 6 survives the round trip
    for n in range(1, 7):
        for sc in all_staircases(n):
            d = triple_from_staircase(sc)
            assert is_hilbert_point(d)
            view = ideal_from_triple(d)
            assert set(view.staircase) == sc


def test_staircase_rejects_non_order_ideal():
    with pytest.raises(AdhmError):
        triple_from_staircase([(0, 0), (1, 1)])


def test_roundtrip_gl_invariance():
    rng = random.Random(9)
    d = triple_from_staircase([(0, 0), (1, 0), (0, 1)])
    view0 = ideal_from_triple(d)
    for _ in range(10):
        while True:
            g = Mat(QQ, [[QQ.random(rng, 3) for _ in range(3)]
                         for _ in range(3)], 3, 3)
            if not QQ.is_zero(g.det()):
                break
        ginv = g.solve(Mat.identity(QQ, 3))
        moved = AdhmData(3, g @ d.x @ ginv, g @ d.y @ ginv, g @ d.i,
                         d.j @ ginv, QQ)
        assert ideal_from_triple(moved) == view0


def test_joint_spectrum_diagonal():
    x = qmat([[1, 0], [0, 2]])
    y = qmat([[5, 0], [0, 7]])
    assert joint_spectrum(x, y) == sorted([(Fraction(1), Fraction(5)),
                                           (Fraction(2), Fraction(7))], key=str)


def test_joint_spectrum_nilpotent_and_triangular():
    x = qmat([[0, 1], [0, 0]])
    y = qmat([[0, 0], [0, 0]])
    assert joint_spectrum(x, y) == [(Fraction(0), Fraction(0))] * 2
    x2 = qmat([[1, 1], [0, 1]])
    y2 = qmat([[3, 5], [0, 3]])
    assert joint_spectrum(x2, y2) == [(Fraction(1), Fraction(3))] * 2


def test_joint_spectrum_non_split_signaled():
    # x^2 = -1 has no rational roots
    x = qmat([[0, -1], [1, 0]])
    y = Mat.identity(QQ, 2)
    with pytest.raises(AdhmError):
        joint_spectrum(x, y)


def test_joint_spectrum_splits_over_cyclotomic():
    f = CyclotomicField(4)
    i = f.zeta()
    x = Mat(f, [[f.zero(), f.neg(f.one())], [f.one(), f.zero()]], 2, 2)
    y = Mat.identity(f, 2)
    spec = joint_spectrum(x, y)
    assert sorted(spec, key=str) == sorted([(i, f.one()), (f.neg(i), f.one())],
                                           key=str)


def test_joint_spectrum_requires_commuting():
    with pytest.raises(AdhmError):
        joint_spectrum(qmat([[0, 1], [0, 0]]), qmat([[0, 0], [1, 0]]))


def test_power_traces_match_spectrum():
    x = qmat([[1, 0], [0, 2]])
    y = qmat([[5, 0], [0, 7]])
    tr = power_traces(x, y, 3)
    spec = joint_spectrum(x, y)
    for (a, b), t in tr.items():
        assert t == sum(ev_x ** a * ev_y ** b for ev_x, ev_y in spec)


def test_power_traces_prime_field():
    f3 = PrimeField(3)
    x = Mat.from_ints(f3, [[1, 0], [0, 2]])
    y = Mat.from_ints(f3, [[2, 0], [0, 2]])
    tr = power_traces(x, y, 2)
    assert tr[(0, 0)] == 2 % 3
    assert tr[(1, 1)] == (1 * 2 + 2 * 2) % 3


def test_calogero_moser_witness():
    d = AdhmData(2, qmat([[0, 1], [0, 0]]), qmat([[0, 0], [-1, 0]]),
                 qmat([[1], [0]]), qmat([[2, 0]]), QQ)
    rep = calogero_moser_check(d, 1)
    assert rep["residual_zero"] and rep["cyclic"]
    assert rep["stabilizer_dim"] == 0 and rep["free_point"]
    assert rep["expected_dim"] == 4


def test_calogero_moser_rejects():
    d = AdhmData(1, qmat([[0]]), qmat([[0]]), qmat([[0]]), qmat([[0]]), QQ)
    with pytest.raises(AdhmError):
        calogero_moser_check(d, 0)  # zero deformation parameter
    with pytest.raises(AdhmError):
        calogero_moser_check(d, 1)  # residual -1 != 0


def test_hilbert_counts_agree():
    orbits = count_hilbert_orbits_f2_n2()
    ideals = count_codim2_ideals_f2()
    assert orbits == ideals
