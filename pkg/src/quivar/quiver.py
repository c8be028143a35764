"""Quivers, their derived quivers (double, framings), and dimension formulas.

Vertex order is fixed by declaration order; every matrix produced here is
indexed accordingly, which keeps serialization stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    name: str
    tail: str
    head: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    edges: tuple
    # provenance of derived quivers: {"star_pairs": {e: e*}, "framing": [names],
    # "original_vertices": [...], "kind": "double"|"frame"|"cb_frame"}
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex labels")
        names = [e.name for e in self.edges]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate edge names")
        vs = set(self.vertices)
        for e in self.edges:
            if e.tail not in vs or e.head not in vs:
                raise QuiverError(f"edge {e.name} has undeclared endpoint")

    @property
    def vertex_index(self):
        return {v: k for k, v in enumerate(self.vertices)}

    def edge(self, name):
        for e in self.edges:
            if e.name == name:
                return e
        raise QuiverError(f"no edge named {name}")

    def edges_into(self, v):
        return [e for e in self.edges if e.head == v]

    def edges_out_of(self, v):
        return [e for e in self.edges if e.tail == v]


def make_quiver(vertices, edges) -> Quiver:
    """Build a quiver from labels and (name, tail, head) triples."""
    return Quiver(tuple(str(v) for v in vertices),
                  tuple(Edge(str(n), str(t), str(h)) for n, t, h in edges))


def jordan_quiver() -> Quiver:
    return make_quiver(["0"], [("x", "0", "0")])


def type_a_quiver(n: int) -> Quiver:
    """A_n with edges k+1 -> k (so paths flow toward vertex 1)."""
    verts = [str(k) for k in range(1, n + 1)]
    edges = [(f"a{k}", str(k + 1), str(k)) for k in range(1, n)]
    return make_quiver(verts, edges)


# -- dimension vectors -------------------------------------------------

def check_dimvector(q: Quiver, v: dict):
    if set(v) != set(q.vertices):
        raise QuiverError(f"dimension vector keys {sorted(v)} do not match vertices")
    if any(int(x) < 0 for x in v.values()):
        raise QuiverError("negative entry in dimension vector")
    return {str(k): int(x) for k, x in v.items()}


def dot(v: dict, w: dict) -> int:
    return sum(v[k] * w[k] for k in v)


def aq_form(q: Quiver, alpha: dict, beta: dict) -> int:
    """The adjacency bilinear form: sum over edges of alpha_tail * beta_head."""
    return sum(alpha[e.tail] * beta[e.head] for e in q.edges)


# -- derived quivers and matrices --------------------------------------

def adjacency(q: Quiver):
    """a_ij = number of edges with tail j and head i."""
    idx = q.vertex_index
    n = len(q.vertices)
    a = [[0] * n for _ in range(n)]
    for e in q.edges:
        a[idx[e.head]][idx[e.tail]] += 1
    return a


def opposite(q: Quiver) -> Quiver:
    return Quiver(q.vertices, tuple(Edge(e.name, e.head, e.tail) for e in q.edges))


def double(q: Quiver) -> Quiver:
    """The double: every edge x gains a reverse edge x*."""
    edges = list(q.edges)
    pairs = {}
    for e in q.edges:
        star = e.name + "*"
        edges.append(Edge(star, e.head, e.tail))
        pairs[e.name] = star
    return Quiver(q.vertices, tuple(edges),
                  {"kind": "double", "star_pairs": pairs,
                   "original_vertices": list(q.vertices)})


def star_pairs(q: Quiver) -> dict:
    pairs = q.provenance.get("star_pairs")
    if pairs is None:
        raise QuiverError("quiver carries no double/star provenance")
    return pairs


def frame(q: Quiver) -> Quiver:
    """Framed quiver: mirror vertices i' and framing edges j_i : i -> i'."""
    mirror = [v + "'" for v in q.vertices]
    edges = list(q.edges) + [Edge("j_" + v, v, v + "'") for v in q.vertices]
    return Quiver(tuple(list(q.vertices) + mirror), tuple(edges),
                  {"kind": "frame", "framing": ["j_" + v for v in q.vertices],
                   "original_vertices": list(q.vertices)})


def cb_frame(q: Quiver, w: dict) -> Quiver:
    """Crawley-Boevey framing: one new vertex inf and w_i edges i -> inf."""
    w = check_dimvector(q, w)
    if "inf" in q.vertices:
        raise QuiverError("vertex label 'inf' is reserved")
    edges = list(q.edges)
    framing = []
    for v in q.vertices:
        for k in range(w[v]):
            name = f"w_{v}_{k}"
            edges.append(Edge(name, v, "inf"))
            framing.append(name)
    return Quiver(tuple(list(q.vertices) + ["inf"]), tuple(edges),
                  {"kind": "cb_frame", "framing": framing,
                   "original_vertices": list(q.vertices)})


def cartan(q: Quiver):
    """C = 2 Id - (A_Q + A_Q^T); symmetric, orientation-independent."""
    a = adjacency(q)
    n = len(a)
    return [[(2 if i == j else 0) - a[i][j] - a[j][i] for j in range(n)]
            for i in range(n)]


def cartan_form(q: Quiver, alpha: dict, beta: dict) -> int:
    c = cartan(q)
    idx = q.vertex_index
    return sum(c[idx[i]][idx[j]] * alpha[i] * beta[j]
               for i in q.vertices for j in q.vertices)


def dims(q: Quiver, v: dict, w: dict = None) -> dict:
    """All closed-form dimension counts attached to (Q, v) and optionally w."""
    v = check_dimvector(q, v)
    avv = aq_form(q, v, v)
    vv = dot(v, v)
    cvv = 2 * vv - 2 * avv  # C_Q v.v, via the doubled adjacency form
    out = {
        "dim_rep": avv,                      # dim Rep(Q, v)
        "dim_gv": vv,                        # dim G_v
        "dim_rep_double": 2 * avv,           # dim Rep(double(Q), v)
        "cartan_vv": cvv,
        "p_v": 1 + avv - vv,                 # flatness defect p(v)
        "stable_quotient_dim": 1 + avv - vv,
        "moment_fiber_component_dim": 1 + 2 * avv - vv,
    }
    if w is not None:
        w = check_dimvector(q, w)
        wv = dot(w, v)
        out.update({
            "dim_rep_framed": wv + avv,            # dim Rep(framed, v, w)
            "dim_rep_framed_double": 2 * avv + 2 * wv,
            "framed_quotient_dim": wv + avv - vv,
            "nakajima_dim": 2 * wv - cvv,          # dim M(v, w), regular case
        })
    return out


def cycles(q: Quiver, maxlen: int):
    """Based oriented cycles of length <= maxlen.

    Each cycle is an edge sequence with head(e_k) = tail(e_{k+1}) cyclically,
    based at the tail of its first edge. Cycles are deduplicated under the
    rotations that preserve the basepoint (traces are rotation-invariant),
    so a 2-cycle through two distinct vertices is reported once per vertex.
    """
    if maxlen < 1:
        raise QuiverError("maxlen must be >= 1")
    out = []
    seen = set()

    def record(path, base):
        names = tuple(e.name for e in path)
        rots = [names[k:] + names[:k] for k in range(len(path))
                if path[k].tail == base]
        canon = min(rots)
        if canon not in seen:
            seen.add(canon)
            out.append([q.edge(n) for n in canon])

    def extend(path, start, current):
        if len(path) >= 1 and current == start:
            record(path, start)
        if len(path) == maxlen:
            return
        for e in q.edges_out_of(current):
            extend(path + [e], start, e.head)

    for v in q.vertices:
        extend([], v, v)
    # canonical overall order: by length, then by name tuple
    out.sort(key=lambda cyc: (len(cyc), tuple(e.name for e in cyc)))
    return out


# -- JSON --------------------------------------------------------------

def quiver_to_json(q: Quiver) -> dict:
    d = {"vertices": list(q.vertices),
         "edges": [{"name": e.name, "tail": e.tail, "head": e.head}
                   for e in q.edges]}
    if q.provenance:
        d["provenance"] = q.provenance
    return d


def quiver_from_json(d: dict) -> Quiver:
    qq = Quiver(tuple(d["vertices"]),
                tuple(Edge(e["name"], e["tail"], e["head"]) for e in d["edges"]),
                d.get("provenance", {}))
    return qq


def load_quiver(path: str) -> Quiver:
    with open(path) as fh:
        return quiver_from_json(json.load(fh))
