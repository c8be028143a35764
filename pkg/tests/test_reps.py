import random
from fractions import Fraction

import pytest

from quivar.fields import PrimeField, QQ
from quivar.linalg import Mat
from quivar.quiver import double, jordan_quiver, type_a_quiver
from quivar.reps import (FramedRep, GradedSubspace, Rep, RepError,
                         endomorphism_space, im_i, is_stable_minus,
                         is_stable_plus, ker_j, max_core, min_closure,
                         moment_residual, preprojective_check,
                         random_framed_rep, random_rep, s_equivalence_probe,
                         semistable_bruteforce, slope, trace_of_cycle,
                         trace_signature, unframed_fiber_obstruction)


def jordan_framed(x, y, i, j, v, w=1):
    dq = double(jordan_quiver())
    rep = Rep(dq, QQ, {"0": v}, {"x": Mat.from_ints(QQ, x),
                                 "x*": Mat.from_ints(QQ, y)})
    return FramedRep(rep, {"0": w},
                     {"0": Mat.from_ints(QQ, i)},
                     {"0": Mat.from_ints(QQ, j)})


def test_shape_validation():
    dq = double(jordan_quiver())
    with pytest.raises(RepError):
        Rep(dq, QQ, {"0": 2}, {"x": Mat.zeros(QQ, 2, 2),
                               "x*": Mat.zeros(QQ, 1, 2)})
    with pytest.raises(RepError):
        Rep(dq, QQ, {"0": 2}, {"x": Mat.zeros(QQ, 2, 2)})


def test_moment_residual_zero_on_fiber():
    # x = E12, y = -E21, i = e1, j = (2, 0): [x, y] + i j = Id
    fr = jordan_framed([[0, 1], [0, 0]], [[0, 0], [-1, 0]],
                       [[1], [0]], [[2, 0]], 2)
    res = moment_residual(fr, {"0": Fraction(1)})
    assert all(m.is_zero() for m in res.values())


def test_moment_residual_traces():
    rng = random.Random(5)
    dq = double(type_a_quiver(2))
    for _ in range(50):
        fr = random_framed_rep(dq, {"1": 2, "2": 1}, {"1": 1, "2": 1}, QQ, rng)
        lam = {k: Fraction(rng.randint(-2, 2)) for k in dq.vertices}
        res = moment_residual(fr, lam)
        lhs = sum((res[k].trace() for k in dq.vertices), Fraction(0))
        lhs += sum(lam[k] * fr.v[k] for k in dq.vertices)
        rhs = sum(((fr.i[k] @ fr.j[k]).trace() for k in dq.vertices), Fraction(0))
        assert lhs == rhs


def test_preprojective_check_unframed():
    dq = double(jordan_quiver())
    rep = Rep(dq, QQ, {"0": 2}, {"x": Mat.from_ints(QQ, [[0, 1], [0, 0]]),
                                 "x*": Mat.from_ints(QQ, [[0, 0], [0, 0]])})
    assert preprojective_check(rep, {"0": 0})
    assert not preprojective_check(rep, {"0": 1})


def test_unframed_obstruction():
    rep = unframed_fiber_obstruction(jordan_quiver(), {"0": 3}, {"0": 1})
    assert rep["empty_by_obstruction"]
    rep = unframed_fiber_obstruction(jordan_quiver(), {"0": 3}, {"0": 0})
    assert not rep["empty_by_obstruction"]


def test_trace_signature_conjugation_invariant():
    rng = random.Random(11)
    jq = jordan_quiver()
    for _ in range(20):
        v = rng.randint(1, 3)
        r = random_rep(jq, {"0": v}, QQ, rng)
        while True:
            g = Mat(QQ, [[QQ.random(rng, 3) for _ in range(v)]
                         for _ in range(v)], v, v)
            if not QQ.is_zero(g.det()):
                break
        conj = Rep(jq, QQ, {"0": v},
                   {"x": g @ r.mats["x"] @ g.solve(Mat.identity(QQ, v))})
        assert trace_signature(r, 3) == trace_signature(conj, 3)


def test_trace_signature_acyclic_empty():
    assert trace_signature(random_rep(type_a_quiver(3), {"1": 1, "2": 2, "3": 1},
                                      QQ, random.Random(0)), 4) == []


def test_trace_of_cycle_validates():
    dq = double(type_a_quiver(2))
    r = random_rep(dq, {"1": 1, "2": 1}, QQ, random.Random(0))
    with pytest.raises(RepError):
        trace_of_cycle(r, [dq.edge("a1"), dq.edge("a1")])


def test_s_equivalence_probe():
    jq = jordan_quiver()
    r1 = Rep(jq, QQ, {"0": 2}, {"x": Mat.from_ints(QQ, [[1, 0], [0, 2]])})
    r2 = Rep(jq, QQ, {"0": 2}, {"x": Mat.from_ints(QQ, [[2, 0], [0, 1]])})
    r3 = Rep(jq, QQ, {"0": 2}, {"x": Mat.from_ints(QQ, [[1, 0], [0, 3]])})
    assert s_equivalence_probe(r1, r2, 2)["verdict"].startswith("indist")
    assert s_equivalence_probe(r1, r3, 2)["verdict"] == "distinguished"


def test_closures():
    # x = nilpotent Jordan block, i = e2: spinning e2 fills the space
    fr = jordan_framed([[0, 1], [0, 0]], [[0, 0], [0, 0]],
                       [[0], [1]], [[0, 0]], 2)
    assert min_closure(fr.rep, im_i(fr)).is_full()
    # ker j is everything, and it is invariant, so the max core is full
    assert max_core(fr.rep, ker_j(fr)).is_full()
    assert is_stable_minus(fr)
    assert not is_stable_plus(fr)


def test_stability_transpose_symmetry():
    # stable+ with i = e1, j picks off the cyclic covector side
    fr = jordan_framed([[0, 0], [1, 0]], [[0, 0], [0, 0]],
                       [[0], [0]], [[0, 1]], 2)
    assert is_stable_plus(fr)
    assert not is_stable_minus(fr)


def test_bruteforce_matches_closure_on_fp():
    rng = random.Random(2)
    dq = double(jordan_quiver())
    f2 = PrimeField(2)
    for _ in range(200):
        fr = random_framed_rep(dq, {"0": 2}, {"0": 1}, f2, rng)
        plus = semistable_bruteforce(fr, {"0": 1})
        minus = semistable_bruteforce(fr, {"0": -1})
        assert plus["stable"] == is_stable_plus(fr)
        assert minus["stable"] == is_stable_minus(fr)
        if not plus["semistable"]:
            assert plus["witness"] is not None


def test_bruteforce_limit():
    dq = double(jordan_quiver())
    fr = random_framed_rep(dq, {"0": 3}, {"0": 1}, PrimeField(2),
                           random.Random(0))
    with pytest.raises(RepError):
        semistable_bruteforce(fr, {"0": 1}, limit=3)


def test_slope():
    assert slope({"a": 1, "b": -1}, {"a": 2, "b": 1}) == Fraction(1, 3)
    with pytest.raises(RepError):
        slope({"a": 1}, {"a": 0})


def test_endomorphisms_scalars_only_when_cyclic():
    fr = jordan_framed([[0, 1], [0, 0]], [[0, 0], [0, 0]],
                       [[0], [1]], [[0, 0]], 2)
    assert endomorphism_space(fr)["dimension"] == 0
    # without framing the commutant of a regular nilpotent is 2-dimensional
    assert endomorphism_space(fr.rep)["dimension"] == 2


def test_graded_subspace_canonical():
    f2 = PrimeField(2)
    amb = {"0": 2}
    s1 = GradedSubspace(f2, amb, {"0": Mat.from_ints(f2, [[1, 1], [0, 1]])})
    s2 = GradedSubspace(f2, amb, {"0": Mat.from_ints(f2, [[1, 0], [0, 1]])})
    assert s1 == s2 and hash(s1) == hash(s2)
    assert GradedSubspace.zero(f2, amb).is_zero()
    assert GradedSubspace.full(f2, amb).is_full()
