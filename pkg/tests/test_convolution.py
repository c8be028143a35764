import random
from fractions import Fraction
from itertools import permutations

import pytest

from quivar.convolution import (ConvError, Correspondence, FiniteGroup,
                                FiniteKernel, GradedKernelAlgebra,
                                algebra_center_dim, apply_kernel,
                                compose_corr, convolve, convolve_via_pullback,
                                diagonal_corr, expand_in_basis, finset,
                                graded_product_check, group_algebra,
                                group_algebra_matches_invariant,
                                group_from_permutations, hecke_algebra,
                                identity_kernel, invariant_algebra,
                                pullback, pushforward, symmetric_group)
from quivar.fields import PrimeField, QQ
from quivar.linalg import Mat


def rand_kernel(src, tgt, rng):
    return FiniteKernel(src, tgt,
                        Mat(QQ, [[QQ.random(rng, 4) for _ in range(len(src))]
                                 for _ in range(len(tgt))],
                            len(tgt), len(src)))


def test_kernel_shape_validation():
    x = finset(["a"])
    y = finset(["u", "v"])
    with pytest.raises(ConvError):
        FiniteKernel(x, y, Mat.zeros(QQ, 1, 2))
    with pytest.raises(ConvError):
        finset(["a", "a"])


def test_identity_kernel_neutral():
    rng = random.Random(1)
    x = finset(["a", "b", "c"])
    y = finset(["u", "v"])
    k = rand_kernel(x, y, rng)
    assert convolve(k, identity_kernel(x)).mat == k.mat
    assert convolve(identity_kernel(y), k).mat == k.mat


def test_apply_and_push_pull():
    x = finset(["a", "b"])
    y = finset(["p"])
    p = {"a": "p", "b": "p"}
    f = {"a": Fraction(1), "b": Fraction(5)}
    assert pushforward(p, x, y, f, QQ) == {"p": Fraction(6)}
    assert pullback(p, {"p": Fraction(2)}) == {"a": Fraction(2), "b": Fraction(2)}
    k = FiniteKernel(x, x, Mat.from_ints(QQ, [[0, 1], [1, 0]]))
    assert apply_kernel(k, f) == {"a": Fraction(5), "b": Fraction(1)}


def test_convolution_formulas_agree():
    rng = random.Random(4)
    for _ in range(50):
        sizes = [rng.randint(1, 4) for _ in range(3)]
        sets = [finset([f"x{k}_{i}" for i in range(n)])
                for k, n in enumerate(sizes)]
        k21 = rand_kernel(sets[0], sets[1], rng)
        k32 = rand_kernel(sets[1], sets[2], rng)
        assert convolve(k32, k21).mat == convolve_via_pullback(k32, k21).mat


def test_convolution_mismatch():
    x, y, z = finset(["a"]), finset(["b"]), finset(["c"])
    with pytest.raises(ConvError):
        convolve(FiniteKernel(y, z, Mat.zeros(QQ, 1, 1)),
                 FiniteKernel(x, x, Mat.zeros(QQ, 1, 1)))


def test_correspondence_composition():
    x = finset(["a", "b"])
    y = finset(["u", "v"])
    z = finset(["p"])
    z12 = Correspondence(x, y, frozenset([("a", "u"), ("b", "u"), ("b", "v")]))
    z23 = Correspondence(y, z, frozenset([("v", "p")]))
    assert compose_corr(z12, z23).pairs == frozenset([("b", "p")])
    assert compose_corr(diagonal_corr(x), z12).pairs == z12.pairs
    assert compose_corr(z12, diagonal_corr(y)).pairs == z12.pairs


def test_symmetric_group_structure():
    s3 = symmetric_group(3)
    assert s3.n == 6
    e = s3.identity
    for a in range(6):
        b = s3.inverse(a)
        assert s3.mul(a, b) == e == s3.mul(b, a)
    # associativity in full
    for a in range(6):
        for b in range(6):
            for c in range(6):
                assert s3.mul(s3.mul(a, b), c) == s3.mul(a, s3.mul(b, c))


def test_group_from_permutations_closure_required():
    with pytest.raises(ConvError):
        group_from_permutations([(0, 1, 2), (1, 0, 2), (1, 2, 0)])


def test_group_algebra_delta_product():
    s3 = symmetric_group(3)
    ga = group_algebra(s3)
    for a in range(6):
        for b in range(6):
            c = ga["constants"][a][b]
            assert c == [int(k == s3.mul(a, b)) for k in range(6)]


def test_group_algebra_center():
    # the center of QS3 is spanned by the 3 class sums
    assert algebra_center_dim(group_algebra(symmetric_group(3))["constants"]) == 3


def test_invariant_algebra_s3_natural_action():
    s3 = symmetric_group(3)
    x = finset(["1", "2", "3"])
    perms = sorted(permutations(range(3)))
    action = {(h, str(i + 1)): str(perms[h][i] + 1)
              for h in range(6) for i in range(3)}
    inv = invariant_algebra(s3, x, action)
    assert len(inv.orbits) == 2  # diagonal and off-diagonal
    t = 1 - inv.unit_index
    c = inv.constants
    # the off-diagonal orbit satisfies T^2 = 2*1 + T
    assert c[t][t][inv.unit_index] == 2 and c[t][t][t] == 1


def test_invariant_algebra_rejects_bad_action():
    s3 = symmetric_group(3)
    x = finset(["1", "2", "3"])
    action = {(h, s): s for h in range(6) for s in x.labels}
    action[(1, "1")] = "2"  # breaks compatibility
    with pytest.raises(ConvError):
        invariant_algebra(s3, x, action)


def test_group_algebra_matches_invariant():
    assert group_algebra_matches_invariant(symmetric_group(2))
    assert group_algebra_matches_invariant(symmetric_group(3))


def test_hecke_small():
    for q in (2, 3):
        h = hecke_algebra(2, q)
        assert h["num_flags"] == q + 1
        assert h["num_orbits"] == 2
        assert h["relation"] == {"T_coeff": q - 1, "unit_coeff": q}
    h3 = hecke_algebra(3, 2)
    assert h3["num_flags"] == 21
    assert h3["num_orbits"] == 6


def test_hecke_unit_and_integrality():
    h = hecke_algebra(3, 2)
    c = h["constants"]
    u = h["unit_index"]
    n = h["num_orbits"]
    for i in range(n):
        assert c[u][i] == [int(k == i) for k in range(n)]
        assert c[i][u] == [int(k == i) for k in range(n)]
        for j in range(n):
            assert all(x >= 0 for x in c[i][j])


def test_hecke_bounds():
    with pytest.raises(ConvError):
        hecke_algebra(4, 2)


def test_graded_product_check():
    x = finset(["a", "b"])
    e = identity_kernel(x)
    n = FiniteKernel(x, x, Mat.from_ints(QQ, [[0, 1], [0, 0]]))
    good = GradedKernelAlgebra(x, [e, n], [0, 2], {0: 2, 1: 4})
    assert graded_product_check(good)["ok"]
    # negative control: an involution cannot carry nonzero degree
    s = FiniteKernel(x, x, Mat.from_ints(QQ, [[0, 1], [1, 0]]))
    bad = GradedKernelAlgebra(x, [e, s], [0, 2])
    rep = graded_product_check(bad)
    assert not rep["ok"] and rep["witness"] == (1, 1)
    with pytest.raises(ConvError):
        GradedKernelAlgebra(x, [e], [0], {0: 1, 1: 2})


def test_expand_in_basis():
    x = finset(["a", "b"])
    e = identity_kernel(x)
    s = FiniteKernel(x, x, Mat.from_ints(QQ, [[0, 1], [1, 0]]))
    combo = FiniteKernel(x, x, Mat.from_ints(QQ, [[2, 3], [3, 2]]))
    assert expand_in_basis(combo, [e, s]) == [Fraction(2), Fraction(3)]
    outside = FiniteKernel(x, x, Mat.from_ints(QQ, [[0, 1], [0, 0]]))
    assert expand_in_basis(outside, [e, s]) is None
