"""The ``qv`` command: JSON reports over the library, plus a selftest.

Exit codes: 0 success, 1 failed mathematical check, 2 input error. A
report is printed on exit 0 and 1; reports are byte-identical for
identical inputs and seeds.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from .adhm import (AdhmData, AdhmError, calogero_moser_check,
                   ideal_from_triple, is_hilbert_point, joint_spectrum,
                   power_traces)
from .convolution import (ConvError, FiniteGroup, FiniteKernel, convolve,
                          convolve_via_pullback, finset, group_algebra,
                          hecke_algebra)
from .fields import FieldError, field_from_spec
from .linalg import Mat
from .mckay import McKayError, delta_vector, mckay_graph_quiver, \
    mckay_quiver, table_by_name, verify_ade
from .quiver import (Quiver, QuiverError, adjacency, cartan, cb_frame,
                     cycles, dims, double, frame, jordan_quiver,
                     make_quiver, quiver_from_json, quiver_to_json,
                     type_a_quiver)
from .reps import (FramedRep, Rep, RepError, endomorphism_space,
                   is_stable_minus, is_stable_plus, moment_residual,
                   preprojective_check, semistable_bruteforce,
                   trace_signature, unframed_fiber_obstruction)
from .roots import (HKParam, RootsError, gg_analysis, is_dominant,
                    is_v_regular, p_defect, rprime_below, weight_of)


class InputError(ValueError):
    pass


class CheckFailed(Exception):
    def __init__(self, results):
        self.results = results


# -- input loading -----------------------------------------------------

_BUILTINS = {"jordan": jordan_quiver}


def _builtin_quiver(name: str) -> Quiver:
    if name in _BUILTINS:
        return _BUILTINS[name]()
    if name.startswith("a") and name[1:].isdigit():
        return type_a_quiver(int(name[1:]))
    raise InputError(f"unknown builtin quiver {name!r}")


def load_quiver_ref(ref) -> Quiver:
    """Quiver from an inline JSON object, a file path, or a builtin name
    ('jordan', 'a2', ...); the prefix 'double:' applies the doubling."""
    if isinstance(ref, dict):
        return quiver_from_json(ref)
    ref = str(ref)
    if ref.startswith("double:"):
        return double(load_quiver_ref(ref[len("double:"):]))
    try:
        return _builtin_quiver(ref)
    except InputError:
        pass
    try:
        with open(ref) as fh:
            return quiver_from_json(json.load(fh))
    except OSError as err:
        raise InputError(f"cannot load quiver {ref!r}: {err}")
    except (KeyError, TypeError, ValueError) as err:
        raise InputError(f"bad quiver JSON in {ref!r}: {err}")


def parse_dimvector(q: Quiver, text, default=None) -> dict:
    if text is None:
        return default
    try:
        val = json.loads(text)
    except ValueError:
        raise InputError(f"bad dimension vector {text!r}")
    if isinstance(val, int):
        inner = [v for v in q.vertices
                 if q.provenance.get("kind") not in ("frame", "cb_frame")
                 or v in q.provenance.get("original_vertices", q.vertices)]
        if len(inner) != 1:
            raise InputError("scalar dimension needs a one-vertex quiver")
        return {inner[0]: val}
    if not isinstance(val, dict):
        raise InputError(f"bad dimension vector {text!r}")
    return {str(k): int(x) for k, x in val.items()}


def parse_rational_vector(q: Quiver, text, default=None) -> dict:
    if text is None:
        return default
    try:
        val = json.loads(text)
    except ValueError:
        raise InputError(f"bad rational vector {text!r}")
    if isinstance(val, (int, str)):
        val = {k: val for k in q.vertices}
    return {str(k): Fraction(str(x)) for k, x in val.items()}


def _parse_entry(fieldobj, x):
    if isinstance(x, list):
        return fieldobj.from_coeffs([Fraction(str(c)) for c in x])
    if isinstance(x, int):
        return fieldobj.from_int(x)
    return fieldobj.parse(str(x))


def parse_matrix(fieldobj, data, rows, cols) -> Mat:
    if len(data) != rows or any(len(r) != cols for r in data):
        raise InputError(f"matrix must be {rows} x {cols}")
    return Mat(fieldobj, [[_parse_entry(fieldobj, x) for x in r] for r in data],
               rows, cols)


def load_rep(path) -> tuple:
    """Representation (Rep or FramedRep) from its JSON file."""
    try:
        with open(path) as fh:
            d = json.load(fh)
    except OSError as err:
        raise InputError(f"cannot load representation: {err}")
    try:
        q = load_quiver_ref(d["quiver"])
        fieldobj = field_from_spec(d["field"])
        v = {str(k): int(x) for k, x in d["v"].items()}
        mats = {e.name: parse_matrix(fieldobj, d["mats"][e.name],
                                     v[e.head], v[e.tail]) for e in q.edges}
        rep = Rep(q, fieldobj, v, mats)
        if "w" not in d:
            return rep
        w = {str(k): int(x) for k, x in d["w"].items()}
        w = {k: w.get(k, 0) for k in q.vertices}
        i = {k: parse_matrix(fieldobj, d["i"].get(k, []), v[k], w[k])
             if w[k] or d["i"].get(k) else Mat.zeros(fieldobj, v[k], w[k])
             for k in q.vertices}
        j = {k: parse_matrix(fieldobj, d["j"].get(k, []), w[k], v[k])
             if w[k] and d["j"].get(k) else Mat.zeros(fieldobj, w[k], v[k])
             for k in q.vertices}
        return FramedRep(rep, w, i, j)
    except (KeyError, TypeError, ValueError) as err:
        if isinstance(err, (FieldError, QuiverError, RepError, InputError)):
            raise InputError(str(err))
        raise InputError(f"bad representation JSON: {err}")


def load_adhm(path) -> AdhmData:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except OSError as err:
        raise InputError(f"cannot load triple: {err}")
    try:
        fieldobj = field_from_spec(d["field"])
        n = int(d["n"])
        x = parse_matrix(fieldobj, d["x"], n, n)
        y = parse_matrix(fieldobj, d["y"], n, n)
        i = parse_matrix(fieldobj, [[r] if not isinstance(r, list) else r
                                    for r in d["i"]], n, 1)
        j = parse_matrix(fieldobj, [d["j"]], 1, n)
        return AdhmData(n, x, y, i, j, fieldobj)
    except (KeyError, TypeError, ValueError) as err:
        raise InputError(f"bad triple JSON: {err}")


def load_kernel(path) -> FiniteKernel:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except OSError as err:
        raise InputError(f"cannot load kernel: {err}")
    try:
        fieldobj = field_from_spec(d.get("field", {"kind": "rational"}))
        src = finset(d["source"])
        tgt = finset(d["target"])
        return FiniteKernel(src, tgt,
                            parse_matrix(fieldobj, d["entries"],
                                         len(tgt), len(src)))
    except (KeyError, TypeError, ValueError) as err:
        raise InputError(f"bad kernel JSON: {err}")


def mat_to_json(m: Mat):
    return [[m.field.to_str(x) for x in r] for r in m.data]


def parse_theta(q: Quiver, text) -> dict:
    if text in (None, "plus"):
        return {k: 1 for k in q.vertices}
    if text == "minus":
        return {k: -1 for k in q.vertices}
    if text == "zero":
        return {k: 0 for k in q.vertices}
    try:
        val = json.loads(text)
        return {str(k): int(x) for k, x in val.items()}
    except (TypeError, ValueError, AttributeError):
        raise InputError(f"bad theta {text!r}")


# -- subcommand handlers (each returns a results dict) -----------------

def cmd_quiver(args):
    q = load_quiver_ref(args.quiver)
    act = args.action
    if act == "show":
        return {"quiver": quiver_to_json(q)}
    if act == "double":
        return {"quiver": quiver_to_json(double(q))}
    if act == "frame":
        return {"quiver": quiver_to_json(frame(q))}
    if act == "cb_frame":
        w = parse_dimvector(q, args.w)
        if w is None:
            raise InputError("cb_frame requires --w")
        return {"quiver": quiver_to_json(cb_frame(q, w))}
    if act == "adjacency":
        return {"adjacency": adjacency(q), "vertices": list(q.vertices)}
    if act == "cartan":
        return {"cartan": cartan(q), "vertices": list(q.vertices)}
    if act == "cycles":
        cyc = cycles(q, args.maxlen)
        return {"maxlen": args.maxlen,
                "cycles": [[e.name for e in c] for c in cyc]}
    raise InputError(f"unknown quiver action {act!r}")


def cmd_dims(args):
    q = load_quiver_ref(args.quiver)
    v = parse_dimvector(q, args.v)
    if v is None:
        raise InputError("dims requires --v")
    w = parse_dimvector(q, args.w)
    out = dims(q, v, w)
    out["formulas"] = {
        "dim_rep": "sum over edges of v_tail * v_head",
        "p_v": "1 + dim_rep - v.v",
        "moment_fiber_component_dim": "1 + 2*dim_rep - v.v",
        "nakajima_dim": "2*w.v - C v.v",
    }
    return out


def cmd_roots(args):
    q = load_quiver_ref(args.quiver)
    v = parse_dimvector(q, args.v)
    act = args.action
    if act == "list":
        if v is None:
            raise InputError("roots list requires --v")
        return {"p_v": p_defect(q, v), "rprime": rprime_below(q, v)}
    if act == "regular":
        if v is None:
            raise InputError("roots regular requires --v")
        lam = parse_rational_vector(q, args.lam, {k: Fraction(0) for k in q.vertices})
        theta = parse_theta(q, args.theta)
        param = HKParam.make({k: lam.get(k, 0) for k in q.vertices}, theta)
        rep = is_v_regular(q, param, v)
        if args.expect == "regular" and not rep["regular"]:
            raise CheckFailed(rep)
        return rep
    if act == "gg":
        if v is None:
            raise InputError("roots gg requires --v")
        lam = parse_rational_vector(q, args.lam, {k: Fraction(0) for k in q.vertices})
        rep = gg_analysis(q, lam, v)
        rep["components"] = [[dict(a) for a in comp] for comp in rep["components"]]
        return rep
    if act == "weight":
        w = parse_dimvector(q, args.w)
        if v is None or w is None:
            raise InputError("roots weight requires --v and --w")
        wt = weight_of(q, v, w)
        return {"weight": wt, "dominant": is_dominant(wt),
                "formula": "w - C v in the fundamental-weight basis"}
    raise InputError(f"unknown roots action {act!r}")


def cmd_rep(args):
    r = load_rep(args.rep)
    rep0 = r.rep if isinstance(r, FramedRep) else r
    q = rep0.quiver
    act = args.action
    lam = parse_rational_vector(q, args.lam, {k: Fraction(0) for k in q.vertices})
    if act == "moment":
        res = moment_residual(r, lam)
        return {"residual": {k: mat_to_json(m) for k, m in res.items()},
                "on_fiber": all(m.is_zero() for m in res.values())}
    if act == "check":
        if isinstance(r, FramedRep):
            res = moment_residual(r, lam)
            ok = all(m.is_zero() for m in res.values())
        else:
            ok = preprojective_check(r, lam)
        obstruction = unframed_fiber_obstruction(q, rep0.v, lam) \
            if not isinstance(r, FramedRep) else None
        out = {"on_fiber": ok}
        if obstruction is not None:
            out["obstruction"] = obstruction
        if args.expect == "fiber" and not ok:
            raise CheckFailed(out)
        return out
    if act == "stable":
        if not isinstance(r, FramedRep):
            raise InputError("stability needs a framed representation")
        theta_text = args.theta or "plus"
        if theta_text == "plus":
            verdict = is_stable_plus(r)
        elif theta_text == "minus":
            verdict = is_stable_minus(r)
        else:
            theta = parse_theta(q, theta_text)
            verdict = semistable_bruteforce(r, theta)["stable"]
        out = {"theta": theta_text, "stable": verdict}
        if args.expect == "stable" and not verdict:
            raise CheckFailed(out)
        return out
    if act == "traces":
        sig = trace_signature(rep0, args.maxlen)
        return {"maxlen": args.maxlen,
                "signature": [{"cycle": list(c), "trace": rep0.field.to_str(t)}
                              for c, t in sig]}
    if act == "brute":
        if not isinstance(r, FramedRep):
            raise InputError("brute-force stability needs a framed representation")
        theta = parse_theta(q, args.theta)
        from .acceptance import enumeration_limit
        from .reps import DEFAULT_SUBSPACE_LIMIT
        rep = semistable_bruteforce(r, theta,
                                    enumeration_limit(DEFAULT_SUBSPACE_LIMIT))
        if args.expect == "stable" and not rep["stable"]:
            raise CheckFailed(rep)
        return rep
    if act == "endo":
        out = endomorphism_space(r)
        return {"dimension": out["dimension"], "variables": out["variables"]}
    raise InputError(f"unknown rep action {act!r}")


def cmd_adhm(args):
    d = load_adhm(args.data)
    act = args.action
    if act == "check":
        ok = is_hilbert_point(d)
        out = {"hilbert_point": ok}
        if args.expect == "hilbert" and not ok:
            raise CheckFailed(out)
        return out
    if act == "ideal":
        view = ideal_from_triple(d)
        return {"staircase": [list(m) for m in sorted(view.staircase)],
                "leading_terms": [list(m) for m in sorted(view.leading_terms)],
                "codimension": view.codim}
    if act == "spectrum":
        spec = joint_spectrum(d.x, d.y)
        f = d.field
        return {"points": [[f.to_str(a), f.to_str(b)] for a, b in spec]}
    if act == "traces":
        f = d.field
        tr = power_traces(d.x, d.y, args.maxdeg)
        return {"maxdeg": args.maxdeg,
                "traces": {f"x^{a}y^{b}": f.to_str(t)
                           for (a, b), t in sorted(tr.items())}}
    if act == "cm":
        if args.lam is None:
            raise InputError("cm requires --lambda")
        return calogero_moser_check(d, Fraction(str(json.loads(args.lam))))
    raise InputError(f"unknown adhm action {act!r}")


def cmd_mckay(args):
    t = table_by_name(args.group)
    rep = verify_ade(t)
    return {"group": t.name, "order": t.order,
            "quiver": quiver_to_json(mckay_graph_quiver(t)),
            "multiplicity_matrix": mckay_quiver(t),
            "delta": delta_vector(t),
            "ade_type": rep["type"],
            "kernel_ok": rep["kernel_ok"]}


def cmd_conv(args):
    act = args.action
    if act == "hecke":
        h = hecke_algebra(args.n, args.q)
        if "relation" in h:
            rel = h["relation"]
            h["relation_text"] = (f"T^2 = {rel['T_coeff']}*T + "
                                  f"{rel['unit_coeff']}*Id")
        return h
    if act == "group":
        try:
            with open(args.table) as fh:
                d = json.load(fh)
            g = FiniteGroup(tuple(tuple(r) for r in d["table"]),
                            tuple(d.get("names",
                                        [str(k) for k in range(len(d["table"]))])))
        except OSError as err:
            raise InputError(f"cannot load group table: {err}")
        except (KeyError, TypeError, ValueError, ConvError) as err:
            raise InputError(f"bad group table: {err}")
        ga = group_algebra(g)
        return {"order": ga["n"], "identity": ga["identity"],
                "constants": ga["constants"]}
    if act == "mul":
        k1 = load_kernel(args.k1)
        k2 = load_kernel(args.k2)
        prod = convolve(k2, k1)
        cross = convolve_via_pullback(k2, k1)
        return {"source": list(prod.source.labels),
                "target": list(prod.target.labels),
                "entries": mat_to_json(prod.mat),
                "dual_formula_agrees": prod.mat == cross.mat}
    raise InputError(f"unknown conv action {act!r}")


def cmd_selftest(args):
    from .acceptance import run_all
    rep = run_all(args.seed)
    for c in rep["checks"]:
        status = "PASS" if c["ok"] else "FAIL"
        print(f"[{status}] {c['name']} ({c['elapsed']}s, bound {c['bound']}s)",
              file=sys.stderr)
    if not rep["passed"]:
        raise CheckFailed(rep)
    return rep


# -- dispatcher --------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="qv",
                                description="exact quiver-variety toolkit")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--quiver", help="file, inline name (jordan, a2, ...), "
                                         "or double:<name>")
        sp.add_argument("--v")
        sp.add_argument("--w")
        sp.add_argument("--lambda", dest="lam")
        sp.add_argument("--theta")
        sp.add_argument("--expect")

    sp = sub.add_parser("quiver")
    sp.add_argument("action", choices=["show", "double", "frame", "cb_frame",
                                       "adjacency", "cartan", "cycles"])
    sp.add_argument("--maxlen", type=int, default=3)
    common(sp)

    sp = sub.add_parser("dims")
    common(sp)

    sp = sub.add_parser("roots")
    sp.add_argument("action", choices=["list", "regular", "gg", "weight"])
    common(sp)

    sp = sub.add_parser("rep")
    sp.add_argument("action", choices=["moment", "check", "stable", "traces",
                                       "brute", "endo"])
    sp.add_argument("--rep", required=True)
    sp.add_argument("--maxlen", type=int, default=3)
    common(sp)

    sp = sub.add_parser("adhm")
    sp.add_argument("action", choices=["check", "ideal", "spectrum", "traces",
                                       "cm"])
    sp.add_argument("--data", required=True)
    sp.add_argument("--maxdeg", type=int, default=3)
    common(sp)

    sp = sub.add_parser("mckay")
    sp.add_argument("action", choices=["build"])
    sp.add_argument("--group", required=True,
                    help="cyclic:N, bd:N, bt, bo, or bi")

    sp = sub.add_parser("conv")
    sp.add_argument("action", choices=["hecke", "group", "mul"])
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--table")
    sp.add_argument("--k1")
    sp.add_argument("--k2")

    sub.add_parser("selftest")
    return p


_HANDLERS = {"quiver": cmd_quiver, "dims": cmd_dims, "roots": cmd_roots,
             "rep": cmd_rep, "adhm": cmd_adhm, "mckay": cmd_mckay,
             "conv": cmd_conv, "selftest": cmd_selftest}

_MATH_ERRORS = (AdhmError, McKayError, RootsError)


def _emit(argv, results, seed, ok):
    digest = hashlib.sha256(json.dumps(argv, sort_keys=True).encode()).hexdigest()
    report = {"command": argv, "inputs_digest": digest, "ok": ok,
              "results": results, "seed": seed, "version": __version__}
    print(json.dumps(report, sort_keys=True, default=str))


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 2 if err.code else 0
    try:
        results = _HANDLERS[args.command](args)
    except CheckFailed as err:
        _emit(argv, err.results, args.seed, False)
        return 1
    except InputError as err:
        print(f"qv: input error: {err}", file=sys.stderr)
        return 2
    except _MATH_ERRORS as err:
        _emit(argv, {"error": str(err)}, args.seed, False)
        return 1
    except (FieldError, QuiverError, RepError, ConvError, OSError,
            ValueError) as err:
        print(f"qv: input error: {err}", file=sys.stderr)
        return 2
    _emit(argv, results, args.seed, True)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
