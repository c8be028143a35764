"""Convolution calculus on finite sets.

Kernels on products of finite sets, pushforward/pullback along maps, the
two equivalent convolution formulas, correspondence composition, invariant
subalgebras under a finite group action, group algebras, flag-variety
Hecke algebras over small finite fields, and graded-degree bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .fields import Field, FieldError, PrimeField, QQ
from .linalg import Mat


class ConvError(ValueError):
    pass


@dataclass(frozen=True)
class FinSet:
    labels: tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ConvError("duplicate labels in finite set")

    def __len__(self):
        return len(self.labels)

    def index(self, x):
        return self.labels.index(x)


def finset(labels) -> FinSet:
    return FinSet(tuple(labels))


@dataclass(frozen=True)
class FiniteKernel:
    """Exact-valued function on target x source, i.e. the matrix of an
    operator from functions on the source to functions on the target."""
    source: FinSet
    target: FinSet
    mat: Mat  # |target| x |source|

    def __post_init__(self):
        if (self.mat.rows, self.mat.cols) != (len(self.target), len(self.source)):
            raise ConvError("kernel shape mismatch")

    @property
    def field(self):
        return self.mat.field


def identity_kernel(x: FinSet, field: Field = QQ) -> FiniteKernel:
    return FiniteKernel(x, x, Mat.identity(field, len(x)))


def indicator_kernel(x1: FinSet, x2: FinSet, pairs, field: Field = QQ):
    """Kernel of the correspondence {(x2, x1)} subset X2 x X1."""
    m = [[field.from_int(int((b, a) in pairs or (b, a) in set(pairs)))
          for a in x1.labels] for b in x2.labels]
    return FiniteKernel(x1, x2, Mat(field, m))


def apply_kernel(k: FiniteKernel, f: dict) -> dict:
    """(K f)(x2) = sum over x1 of K(x2, x1) f(x1)."""
    fld = k.field
    vec = Mat(fld, [[f[a]] for a in k.source.labels], len(k.source), 1)
    out = k.mat @ vec
    return {b: out.data[r][0] for r, b in enumerate(k.target.labels)}


def pushforward(p: dict, x: FinSet, y: FinSet, f: dict, field: Field = QQ):
    """(p_* f)(y) = sum of f over the fiber of p above y."""
    out = {b: field.zero() for b in y.labels}
    for a in x.labels:
        out[p[a]] = field.add(out[p[a]], f[a])
    return out


def pullback(p: dict, f: dict) -> dict:
    """(p^* f)(x) = f(p(x))."""
    return {a: f[b] for a, b in p.items()}


def convolve(k32: FiniteKernel, k21: FiniteKernel) -> FiniteKernel:
    """Convolution as the matrix product; inner sets must agree."""
    if k21.target != k32.source:
        raise ConvError("inner finite sets do not match")
    return FiniteKernel(k21.source, k32.target, k32.mat @ k21.mat)


def convolve_via_pullback(k32: FiniteKernel, k21: FiniteKernel) -> FiniteKernel:
    """The same convolution through the triple-product formula: pull both
    kernels back to X3 x X2 x X1, multiply pointwise, push forward along
    the projection to X3 x X1. Used as a cross-check of ``convolve``."""
    if k21.target != k32.source:
        raise ConvError("inner finite sets do not match")
    fld = k32.field
    x1, x2, x3 = k21.source, k21.target, k32.target
    acc = {(c, a): fld.zero() for c in x3.labels for a in x1.labels}
    for ci, c in enumerate(x3.labels):
        for bi, b in enumerate(x2.labels):
            for ai, a in enumerate(x1.labels):
                term = fld.mul(k32.mat.data[ci][bi], k21.mat.data[bi][ai])
                acc[(c, a)] = fld.add(acc[(c, a)], term)
    m = [[acc[(c, a)] for a in x1.labels] for c in x3.labels]
    return FiniteKernel(x1, x3, Mat(fld, m))


# -- correspondences ---------------------------------------------------

@dataclass(frozen=True)
class Correspondence:
    """Subset of X1 x X2, composable in diagram order."""
    x1: FinSet
    x2: FinSet
    pairs: frozenset

    def __post_init__(self):
        for a, b in self.pairs:
            if a not in self.x1.labels or b not in self.x2.labels:
                raise ConvError("correspondence pair outside the product")


def diagonal_corr(x: FinSet) -> Correspondence:
    return Correspondence(x, x, frozenset((a, a) for a in x.labels))


def compose_corr(z12: Correspondence, z23: Correspondence) -> Correspondence:
    """Relational composition: pairs (x1, x3) connected through some x2."""
    if z12.x2 != z23.x1:
        raise ConvError("middle finite sets do not match")
    pairs = frozenset((a, c) for a, b in z12.pairs for b2, c in z23.pairs
                      if b == b2)
    return Correspondence(z12.x1, z23.x2, pairs)


# -- groups by multiplication table ------------------------------------

@dataclass(frozen=True)
class FiniteGroup:
    """Group on elements 0..n-1 given by its multiplication table."""
    table: tuple  # table[a][b] = a * b
    names: tuple

    def __post_init__(self):
        n = len(self.table)
        if any(len(r) != n for r in self.table):
            raise ConvError("multiplication table is not square")
        if sorted(self.table[0]) != list(range(n)):
            raise ConvError("row of identity is not a permutation")
        # identity, associativity spot-check, inverses
        if self.identity is None:
            raise ConvError("no identity element")
        for a in range(n):
            if self.inverse(a) is None:
                raise ConvError("missing inverse")

    @property
    def n(self):
        return len(self.table)

    @property
    def identity(self):
        for e in range(self.n):
            if all(self.table[e][a] == a and self.table[a][e] == a
                   for a in range(self.n)):
                return e
        return None

    def mul(self, a, b):
        return self.table[a][b]

    def inverse(self, a):
        e = self.identity
        for b in range(self.n):
            if self.mul(a, b) == e and self.mul(b, a) == e:
                return b
        return None


def symmetric_group(n: int) -> FiniteGroup:
    from itertools import permutations
    perms = sorted(permutations(range(n)))
    idx = {p: k for k, p in enumerate(perms)}
    table = tuple(tuple(idx[tuple(p[q[i]] for i in range(n))] for q in perms)
                  for p in perms)
    return FiniteGroup(table, tuple("".join(map(str, p)) for p in perms))


def group_from_permutations(perms) -> FiniteGroup:
    """Group generated as a closed set of permutations (tuples); must
    already be closed under composition."""
    perms = sorted(set(perms))
    idx = {p: k for k, p in enumerate(perms)}
    n = len(perms[0])
    table = []
    for p in perms:
        row = []
        for q in perms:
            comp = tuple(p[q[i]] for i in range(n))
            if comp not in idx:
                raise ConvError("permutation set is not closed")
            row.append(idx[comp])
        table.append(tuple(row))
    return FiniteGroup(tuple(table), tuple(str(p) for p in perms))


def validate_action(g: FiniteGroup, x: FinSet, action: dict):
    """action[(g, x)] -> x; checks identity and compatibility."""
    e = g.identity
    for a in x.labels:
        if action[(e, a)] != a:
            raise ConvError("identity does not act trivially")
    for h in range(g.n):
        for k in range(g.n):
            for a in x.labels:
                if action[(g.mul(h, k), a)] != action[(h, action[(k, a)])]:
                    raise ConvError("action is not compatible with the product")


@dataclass
class OrbitAlgebra:
    """Basis of diagonal-orbit indicator kernels with integer structure
    constants c[i][j][k] for e_i * e_j = sum_k c e_k."""
    x: FinSet
    orbits: list          # list of frozensets of (a, b) pairs
    constants: list       # c[i][j][k]
    unit_index: int

    def orbit_of(self, pair):
        for k, o in enumerate(self.orbits):
            if pair in o:
                return k
        raise ConvError("pair not covered by any orbit")


def invariant_algebra(g: FiniteGroup, x: FinSet, action: dict,
                      check: bool = True) -> OrbitAlgebra:
    """Orbit-basis presentation of the G-invariant convolution subalgebra
    of kernels on X x X, under the diagonal action."""
    if check:
        validate_action(g, x, action)
    pairs = [(a, b) for a in x.labels for b in x.labels]
    seen = set()
    orbits = []
    for pr in pairs:
        if pr in seen:
            continue
        orb = set()
        for h in range(g.n):
            orb.add((action[(h, pr[0])], action[(h, pr[1])]))
        orbits.append(frozenset(orb))
        seen |= orb
    # canonical order: by the lexicographically least pair in each orbit
    lab_idx = {a: i for i, a in enumerate(x.labels)}
    orbits.sort(key=lambda o: min((lab_idx[a], lab_idx[b]) for a, b in o))
    member = {}
    for k, o in enumerate(orbits):
        for pr in o:
            member[pr] = k
    n_orb = len(orbits)
    constants = [[[0] * n_orb for _ in range(n_orb)] for _ in range(n_orb)]
    for i in range(n_orb):
        for j in range(n_orb):
            # value at one representative of each target orbit
            done = set()
            for (a, c) in [min(o, key=lambda pr: (lab_idx[pr[0]], lab_idx[pr[1]]))
                           for o in orbits]:
                k = member[(a, c)]
                if k in done:
                    continue
                done.add(k)
                cnt = sum(1 for b in x.labels
                          if (a, b) in orbits[i] and (b, c) in orbits[j])
                constants[i][j][k] = cnt
    diag = frozenset((a, a) for a in x.labels)
    unit = orbits.index(diag)
    return OrbitAlgebra(x, orbits, constants, unit)


def group_algebra(g: FiniteGroup) -> dict:
    """Structure constants of the convolution algebra on functions on G:
    delta_a * delta_b = delta_{ab}. Returned with the identification with
    the invariant algebra of G acting on itself by left translations."""
    n = g.n
    constants = [[[int(g.mul(a, b) == c) for c in range(n)]
                  for b in range(n)] for a in range(n)]
    return {"n": n, "constants": constants, "identity": g.identity}


def group_algebra_matches_invariant(g: FiniteGroup) -> bool:
    """The bijection orbit((g1, g2)) <-> g1^{-1} g2 carries the invariant
    algebra of G acting on itself to the group algebra."""
    x = finset([f"g{k}" for k in range(g.n)])
    action = {(h, f"g{k}"): f"g{g.mul(h, k)}" for h in range(g.n)
              for k in range(g.n)}
    inv = invariant_algebra(g, x, action)
    ga = group_algebra(g)
    if len(inv.orbits) != g.n:
        return False
    # orbit k corresponds to the group element g1^{-1} g2 for any member
    orbit_elem = []
    for o in inv.orbits:
        vals = {g.mul(g.inverse(int(a[1:])), int(b[1:])) for a, b in o}
        if len(vals) != 1:
            return False
        orbit_elem.append(vals.pop())
    for i in range(g.n):
        for j in range(g.n):
            for k in range(g.n):
                # note order: convolution of indicators composes relations
                # (x, y) in O_i, (y, z) in O_j, matching element product
                if inv.constants[i][j][k] != \
                        ga["constants"][orbit_elem[i]][orbit_elem[j]][orbit_elem[k]]:
                    return False
    return True


def algebra_center_dim(constants) -> int:
    """Dimension of the center of an algebra given by structure constants."""
    n = len(constants)
    rows = []
    for j in range(n):
        for k in range(n):
            row = [Fraction(constants[i][j][k] - constants[j][i][k])
                   for i in range(n)]
            rows.append(row)
    m = Mat(QQ, rows, len(rows), n)
    return m.kernel_basis().cols


# -- flag varieties over F_q and Hecke algebras ------------------------

def _all_vectors(q, n):
    return list(product(range(q), repeat=n))


def _rref_key(field, vecs):
    """Canonical key of the span of row vectors over F_q."""
    m = Mat.from_ints(field, [list(v) for v in vecs])
    rank, _, red = m.rref()
    return tuple(tuple(int(x) for x in red.data[r]) for r in range(rank))


def complete_flags(n: int, q: int):
    """All complete flags in F_q^n, as tuples of canonical subspace keys
    of dimensions 1..n-1 (each key a tuple of reduced-echelon row tuples)."""
    field = PrimeField(q)
    vectors = [v for v in _all_vectors(q, n) if any(v)]
    if n == 1:
        return [()]
    out = set()

    def extend(chain):
        if len(chain) == n - 1:
            out.add(tuple(chain))
            return
        current = [list(r) for r in chain[-1]] if chain else []
        for v in vectors:
            key = _rref_key(field, current + [list(v)])
            if len(key) == len(chain) + 1:
                extend(chain + [key])

    extend([])
    return sorted(out)


def gl_elements(n: int, q: int):
    """All invertible n x n matrices over F_q."""
    field = PrimeField(q)
    out = []
    for entries in product(range(q), repeat=n * n):
        m = Mat.from_ints(field, [list(entries[r * n:(r + 1) * n])
                                  for r in range(n)])
        if not field.is_zero(m.det()):
            out.append(m)
    return out


def hecke_algebra(n: int, q: int) -> dict:
    """Convolution algebra of GL_n(F_q)-orbits on pairs of complete flags.

    Returns the orbit count (expected |S_n|), the structure constants over
    the rationals, and for n = 2 the quadratic relation satisfied by the
    off-diagonal orbit.
    """
    if n not in (2, 3) or q not in (2, 3):
        raise ConvError("desk-scale bounds: n in {2,3}, q in {2,3}")
    field = PrimeField(q)
    flags = complete_flags(n, q)
    flag_idx = {fl: k for k, fl in enumerate(flags)}

    def act(g: Mat, fl):
        chain = []
        for key in fl:
            imgs = []
            for row in key:
                col = g @ Mat.column(field, [field.from_int(c) for c in row])
                imgs.append([int(col.data[r][0]) for r in range(n)])
            chain.append(_rref_key(field, imgs))
        return tuple(chain)

    perms = sorted({tuple(flag_idx[act(g, fl)] for fl in flags)
                    for g in gl_elements(n, q)})
    gperm = group_from_permutations(perms)
    x = finset([f"f{k}" for k in range(len(flags))])
    action = {(hk, f"f{k}"): f"f{perms[hk][k]}"
              for hk in range(len(perms)) for k in range(len(flags))}
    inv = invariant_algebra(gperm, x, action, check=False)
    result = {"n": n, "q": q, "num_flags": len(flags),
              "num_orbits": len(inv.orbits),
              "constants": inv.constants,
              "unit_index": inv.unit_index}
    if n == 2 and len(inv.orbits) == 2:
        t = 1 - inv.unit_index
        c = inv.constants
        # T * T = c[t][t][t] T + c[t][t][unit] 1
        result["relation"] = {"T_coeff": c[t][t][t],
                              "unit_coeff": c[t][t][inv.unit_index]}
    return result


# -- graded bookkeeping ------------------------------------------------

@dataclass
class GradedKernelAlgebra:
    """Finite model of a graded convolution algebra: basis kernels on a
    single finite set, each with an assigned integer degree; component
    labels (r, s) carry even declared dimensions d_rs = (d_r + d_s)/2."""
    x: FinSet
    basis: list      # list of FiniteKernel on x
    degrees: list    # integer degree per basis kernel
    component_dims: dict = None  # r -> d_r (even), optional

    def __post_init__(self):
        if self.component_dims:
            for r, dr in self.component_dims.items():
                for s, ds in self.component_dims.items():
                    if (dr + ds) % 2 != 0:
                        raise ConvError("component dimensions must have "
                                        "even pairwise sums")


def expand_in_basis(k: FiniteKernel, basis):
    """Coefficients of k in the linear span of the basis kernels, or None."""
    fld = k.field
    cols = []
    for b in basis:
        cols.append([b.mat.data[r][c] for r in range(b.mat.rows)
                     for c in range(b.mat.cols)])
    target = [[k.mat.data[r][c]] for r in range(k.mat.rows)
              for c in range(k.mat.cols)]
    m = Mat(fld, list(map(list, zip(*cols))), len(target), len(basis))
    sol = m.solve(Mat(fld, target, len(target), 1))
    if sol is None:
        return None
    return [sol.data[r][0] for r in range(len(basis))]


def graded_product_check(a: GradedKernelAlgebra) -> dict:
    """Verify that products of basis kernels only involve terms of the
    summed degree; returns a witness on failure."""
    for i, ki in enumerate(a.basis):
        for j, kj in enumerate(a.basis):
            prod = convolve(ki, kj)
            coeffs = expand_in_basis(prod, a.basis)
            if coeffs is None:
                return {"ok": False, "witness": (i, j),
                        "reason": "product not in the span of the basis"}
            for k, c in enumerate(coeffs):
                if not prod.field.is_zero(c) and \
                        a.degrees[k] != a.degrees[i] + a.degrees[j]:
                    return {"ok": False, "witness": (i, j),
                            "reason": f"degree {a.degrees[k]} term in a "
                                      f"product of degrees {a.degrees[i]} "
                                      f"and {a.degrees[j]}"}
    return {"ok": True}
