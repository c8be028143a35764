"""McKay quivers of finite subgroups of SL2 from exact character tables.

Tables for the cyclic and binary dihedral families are generated from the
standard formulas; the three exceptional groups (orders 24, 48, 120) ship
as embedded exact cyclotomic data. Every table self-verifies at
construction: class sizes, orthogonality, degree sums, and the reality and
degree of the distinguished 2-dimensional character.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .fields import CyclotomicField, FieldError
from .quiver import Edge, Quiver


class McKayError(ValueError):
    pass


@dataclass(frozen=True)
class CharacterTable:
    name: str
    field: CyclotomicField
    order: int
    classes: tuple  # (label, size)
    chars: tuple    # rows of cyclotomic scalars, one per irreducible
    trivial_index: int
    chi_e: tuple    # distinguished 2-dimensional character (may be reducible)

    def __post_init__(self):
        self.validate()

    @property
    def degrees(self):
        return [int(self.field.rational_part(row[0])) for row in self.chars]

    def inner(self, i: int, j: int) -> Fraction:
        """Class-weighted Hermitian pairing of two character rows."""
        f = self.field
        acc = f.zero()
        for c, (_, size) in enumerate(self.classes):
            term = f.mul(f.conj(self.chars[i][c]), self.chars[j][c])
            acc = f.add(acc, f.mul(f.from_int(size), term))
        return f.rational_part(acc) / self.order

    def validate(self):
        if sum(s for _, s in self.classes) != self.order:
            raise McKayError("class sizes do not sum to the group order")
        k = len(self.classes)
        if len(self.chars) != k:
            raise McKayError("number of characters != number of classes")
        for i in range(k):
            for j in range(k):
                expect = Fraction(int(i == j))
                if self.inner(i, j) != expect:
                    raise McKayError(f"orthogonality fails at ({i},{j})")
        if sum(d * d for d in self.degrees) != self.order:
            raise McKayError("degree squares do not sum to the group order")
        f = self.field
        triv = self.chars[self.trivial_index]
        if any(row != f.one() for row in triv):
            raise McKayError("trivial character is not identically 1")
        e = self.chi_e
        if self.field.rational_part(e[0]) != 2:
            raise McKayError("distinguished character must have degree 2")
        for val in e:
            if f.conj(val) != val:
                raise McKayError("distinguished character must be real-valued")
        for i in range(k):
            acc = f.zero()
            for c, (_, size) in enumerate(self.classes):
                acc = f.add(acc, f.mul(f.from_int(size),
                                       f.mul(f.conj(self.chars[i][c]), e[c])))
            mult = f.rational_part(acc) / self.order
            if mult.denominator != 1 or mult < 0:
                raise McKayError("distinguished row is not a character")


def cyclic_table(n: int) -> CharacterTable:
    """Z/n embedded in SL2 as diag(zeta, zeta^-1)."""
    if n < 1:
        raise McKayError("n must be >= 1")
    f = CyclotomicField(max(n, 1))
    classes = tuple((f"g^{a}", 1) for a in range(n))
    chars = []
    for k in range(n):
        chars.append(tuple(f.zeta_pow(k * a) for a in range(n)))
    # chi_E = chi_1 + chi_{n-1} (reducible unless the group is nonabelian)
    chi_e = tuple(f.add(f.zeta_pow(a), f.zeta_pow(-a)) for a in range(n))
    return CharacterTable(f"cyclic:{n}", f, n, classes, tuple(chars),
                          trivial_index=0, chi_e=chi_e)


def binary_dihedral_table(n: int) -> CharacterTable:
    """Dicyclic group of order 4n: <a, b | a^{2n}=1, b^2=a^n, bab^-1=a^-1>."""
    if n < 2:
        raise McKayError("n must be >= 2")
    f = CyclotomicField(4 * n)

    def z2n(k):  # zeta_{2n}^k inside Q(zeta_{4n})
        return f.zeta_pow(2 * k)

    classes = [("1", 1), (f"a^{n}", 1)]
    classes += [(f"a^{k}", 2) for k in range(1, n)]
    classes += [("b", n), ("ab", n)]
    classes = tuple(classes)

    chars = []
    # four linear characters: a -> alpha in {1,-1}, b -> beta with
    # beta^2 = alpha^n
    i4 = f.zeta_pow(n)  # a primitive 4th root when needed: zeta_{4n}^n
    for alpha_sign, beta in [(1, f.one()), (1, f.neg(f.one()))] + (
            [( -1, f.one()), (-1, f.neg(f.one()))] if n % 2 == 0 else
            [(-1, i4), (-1, f.neg(i4))]):
        alpha = f.from_int(alpha_sign)
        row = [f.one(), f.from_int(alpha_sign ** n)]
        row += [f.from_int(alpha_sign ** k) for k in range(1, n)]
        row += [beta, f.mul(alpha, beta)]
        chars.append(tuple(row))
    # two-dimensional characters chi_h, h = 1..n-1
    for h in range(1, n):
        row = [f.from_int(2), f.from_int(2 * (-1) ** h)]
        row += [f.add(z2n(h * k), z2n(-h * k)) for k in range(1, n)]
        row += [f.zero(), f.zero()]
        chars.append(tuple(row))
    return CharacterTable(f"bd:{n}", f, 4 * n, classes, tuple(chars),
                          trivial_index=0, chi_e=chars[4])


def _bt_table() -> CharacterTable:
    """Binary tetrahedral group (order 24), exact data over Q(zeta_3)."""
    f = CyclotomicField(3)
    w = f.zeta()        # primitive cube root
    w2 = f.mul(w, w)
    one, two, three = f.from_int(1), f.from_int(2), f.from_int(3)
    neg = f.neg
    zero = f.zero()
    classes = (("1", 1), ("-1", 1), ("4a", 6),
               ("3a", 4), ("3b", 4), ("6a", 4), ("6b", 4))
    chars = (
        (one, one, one, one, one, one, one),
        (one, one, one, w, w2, w, w2),
        (one, one, one, w2, w, w2, w),
        (two, neg(two), zero, neg(one), neg(one), one, one),        # E
        (two, neg(two), zero, neg(w), neg(w2), w, w2),
        (two, neg(two), zero, neg(w2), neg(w), w2, w),
        (three, three, neg(one), zero, zero, zero, zero),
    )
    return CharacterTable("bt", f, 24, classes, chars,
                          trivial_index=0, chi_e=chars[3])


def _bo_table() -> CharacterTable:
    """Binary octahedral group (order 48), exact data over Q(zeta_8)."""
    f = CyclotomicField(8)
    s2 = f.add(f.zeta_pow(1), f.zeta_pow(-1))  # sqrt(2)
    I = lambda n: f.from_int(n)
    neg = f.neg
    classes = (("1", 1), ("-1", 1), ("4a", 6), ("8a", 6), ("8b", 6),
               ("4b", 12), ("6a", 8), ("3a", 8))
    chars = (
        (I(1), I(1), I(1), I(1), I(1), I(1), I(1), I(1)),
        (I(1), I(1), I(1), I(-1), I(-1), I(-1), I(1), I(1)),
        (I(2), I(-2), I(0), s2, neg(s2), I(0), I(1), I(-1)),         # E
        (I(2), I(-2), I(0), neg(s2), s2, I(0), I(1), I(-1)),
        (I(2), I(2), I(2), I(0), I(0), I(0), I(-1), I(-1)),
        (I(3), I(3), I(-1), I(1), I(1), I(-1), I(0), I(0)),
        (I(3), I(3), I(-1), I(-1), I(-1), I(1), I(0), I(0)),
        (I(4), I(-4), I(0), I(0), I(0), I(0), I(-1), I(1)),
    )
    return CharacterTable("bo", f, 48, classes, chars,
                          trivial_index=0, chi_e=chars[2])


def _bi_table() -> CharacterTable:
    """Binary icosahedral group (order 120), exact data over Q(zeta_5)."""
    f = CyclotomicField(5)
    # golden-ratio conjugates: gp = (1+sqrt5)/2, gm = (1-sqrt5)/2
    gp = f.neg(f.add(f.zeta_pow(2), f.zeta_pow(3)))
    gm = f.neg(f.add(f.zeta_pow(1), f.zeta_pow(4)))
    I = lambda n: f.from_int(n)
    neg = f.neg
    classes = (("1", 1), ("-1", 1), ("10a", 12), ("10b", 12),
               ("5a", 12), ("5b", 12), ("6a", 20), ("3a", 20), ("4a", 30))
    chars = (
        (I(1), I(1), I(1), I(1), I(1), I(1), I(1), I(1), I(1)),
        (I(2), I(-2), gp, gm, neg(gm), neg(gp), I(1), I(-1), I(0)),  # E
        (I(2), I(-2), gm, gp, neg(gp), neg(gm), I(1), I(-1), I(0)),
        (I(3), I(3), gp, gm, gm, gp, I(0), I(0), I(-1)),
        (I(3), I(3), gm, gp, gp, gm, I(0), I(0), I(-1)),
        (I(4), I(4), I(-1), I(-1), I(-1), I(-1), I(1), I(1), I(0)),
        (I(5), I(5), I(0), I(0), I(0), I(0), I(-1), I(-1), I(1)),
        (I(4), I(-4), I(1), I(1), I(-1), I(-1), I(-1), I(1), I(0)),
        (I(6), I(-6), I(-1), I(-1), I(1), I(1), I(0), I(0), I(0)),
    )
    return CharacterTable("bi", f, 120, classes, chars,
                          trivial_index=0, chi_e=chars[1])


_EXCEPTIONAL = {"bt": _bt_table, "bo": _bo_table, "bi": _bi_table}


def exceptional_table(kind: str) -> CharacterTable:
    try:
        return _EXCEPTIONAL[kind.lower()]()
    except KeyError:
        raise McKayError(f"unknown exceptional kind {kind!r}") from None


def table_by_name(name: str) -> CharacterTable:
    """cyclic:n | bd:n | bt | bo | bi"""
    name = name.lower()
    if name.startswith("cyclic:"):
        return cyclic_table(int(name.split(":")[1]))
    if name.startswith("bd:"):
        return binary_dihedral_table(int(name.split(":")[1]))
    return exceptional_table(name)


def mckay_quiver(t: CharacterTable):
    """Adjacency a_ij = multiplicity of L_i in L_j (x) E, as exact
    character inner products; entries asserted nonnegative integers and
    (for self-dual E) symmetric."""
    f = t.field
    k = len(t.chars)
    e = t.chi_e
    a = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            acc = f.zero()
            for c, (_, size) in enumerate(t.classes):
                term = f.mul(f.conj(t.chars[i][c]),
                             f.mul(t.chars[j][c], e[c]))
                acc = f.add(acc, f.mul(f.from_int(size), term))
            try:
                val = f.rational_part(acc) / t.order
            except FieldError:
                raise McKayError("non-rational multiplicity") from None
            if val.denominator != 1 or val < 0:
                raise McKayError(f"multiplicity a[{i}][{j}] = {val} is not "
                                 "a nonnegative integer")
            a[i][j] = int(val)
    for i in range(k):
        for j in range(k):
            if a[i][j] != a[j][i]:
                raise McKayError("McKay adjacency is not symmetric")
    return a


def delta_vector(t: CharacterTable) -> dict:
    return {str(i): d for i, d in enumerate(t.degrees)}


def mckay_graph_quiver(t: CharacterTable) -> Quiver:
    """The McKay quiver as a quiver object with the canonical orientation
    (each symmetric pair split with the lower-index vertex as tail)."""
    a = mckay_quiver(t)
    k = len(a)
    verts = [str(i) for i in range(k)]
    edges = []
    for i in range(k):
        for m in range(a[i][i] // 2):
            edges.append((f"l{i}_{m}", str(i), str(i)))
        for j in range(i + 1, k):
            for m in range(a[j][i]):
                edges.append((f"e{i}_{j}_{m}", str(i), str(j)))
    return Quiver(tuple(verts),
                  tuple(Edge(n, tl, hd) for n, tl, hd in edges),
                  {"kind": "mckay", "note": "orientation is a choice"})


# -- affine ADE recognition -------------------------------------------

def _graph_from_adjacency(a) -> nx.Graph:
    g = nx.Graph()
    n = len(a)
    g.add_nodes_from(range(n))
    for i in range(n):
        if a[i][i]:
            g.add_edge(i, i, mult=a[i][i] // 2)
        for j in range(i + 1, n):
            if a[i][j]:
                g.add_edge(i, j, mult=a[i][j])
    return g


def _affine_catalog(n: int):
    """Affine ADE diagrams with n vertices, as doubled adjacency matrices."""
    out = {}

    def path_graph(pairs, size):
        a = [[0] * size for _ in range(size)]
        for i, j in pairs:
            if i == j:
                a[i][i] += 2
            else:
                a[i][j] += 1
                a[j][i] += 1
        return a

    if n == 1:
        out["A~0"] = [[2]]
    if n == 2:
        out["A~1"] = [[0, 2], [2, 0]]
    if n >= 3:
        out[f"A~{n - 1}"] = path_graph([(k, (k + 1) % n) for k in range(n)], n)
    if n >= 5:
        # D~(n-1): central path of n-4 vertices with a fork at each end
        m = n - 4
        pairs = [(k, k + 1) for k in range(m - 1)]
        pairs += [(m, 0), (m + 1, 0), (m + 2, m - 1), (m + 3, m - 1)]
        out[f"D~{n - 1}"] = path_graph(pairs, n)
    if n == 7:
        out["E~6"] = path_graph([(0, 1), (1, 2), (2, 3), (3, 4),
                                 (2, 5), (5, 6)], 7)
    if n == 8:
        out["E~7"] = path_graph([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5),
                                 (5, 6), (3, 7)], 8)
    if n == 9:
        out["E~8"] = path_graph([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5),
                                 (5, 6), (6, 7), (2, 8)], 9)
    return out


def identify_affine_ade(a) -> str:
    """Name of the affine ADE diagram isomorphic to the given doubled
    adjacency matrix, or raise."""
    g = _graph_from_adjacency(a)
    for name, cat in _affine_catalog(len(a)).items():
        h = _graph_from_adjacency(cat)
        if nx.is_isomorphic(g, h,
                            edge_match=lambda e1, e2: e1["mult"] == e2["mult"]):
            return name
    raise McKayError("graph matches no affine ADE diagram")


def verify_ade(t: CharacterTable) -> dict:
    """Identify the affine ADE type of the McKay quiver and check the
    kernel identity C delta = 0 for the degree vector delta."""
    a = mckay_quiver(t)
    k = len(a)
    c = [[(2 if i == j else 0) - a[i][j] for j in range(k)] for i in range(k)]
    delta = t.degrees
    cdelta = [sum(c[i][j] * delta[j] for j in range(k)) for i in range(k)]
    kind = identify_affine_ade(a)
    return {"type": kind, "delta": delta,
            "cartan_times_delta": cdelta,
            "kernel_ok": all(x == 0 for x in cdelta),
            "trivial_vertex_degree_one": delta[t.trivial_index] == 1}
