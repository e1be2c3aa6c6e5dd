"""``conic-lab``: command-line front end.

Exit codes: 0 success, 1 input error, 2 unsupported singularity, 3 resource
cap (step budget, Hilbert window or genericity retries).
"""

import argparse
import json
import sys
from math import comb

from .algebra.parse import parse_polynomial
from .algebra.scalars import field_from_name, format_scalar
from .arrangement import DEFAULT_RETRIES, NODE_TACNODE, ORDINARY, arrangement_polynomial, profile
from .bounds import DEFAULT_ALPHA, evaluate_bounds, tang_check
from .errors import (
    ConicLabError,
    GenericityFailure,
    InputError,
    NotZeroDimensional,
    ResourceCapExceeded,
    UnsupportedSingularity,
)
from .files import format_rational, load_arrangement, load_json, parse_rational
from .groebner import STEP_BUDGET_ENV, StepBudget, default_step_budget
from .jacobian import FREE, NEARLY_FREE, freeness_report
from .pencil import Pencil, base_locus, ordinary_experiment, verify_prop4

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNSUPPORTED = 2
EXIT_RESOURCE = 3

VERDICT_WORDS = {FREE: "free", NEARLY_FREE: "nearly free", "neither": "neither free nor nearly free"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _dump(doc):
    return json.dumps(doc, sort_keys=True, indent=2)


def _budget(args):
    return StepBudget(args.step_budget if args.step_budget is not None else default_step_budget())


def _s_value(text):
    text = text.strip()
    if text.startswith("s="):
        text = text[2:]
    return parse_rational(text)


# -- reports (plain dicts so the JSON output is the report itself) -------------

def freeness_dict(f, k=None, t=None, budget=None):
    rep = freeness_report(f, k=k, t=t, budget=budget)
    return rep.to_dict()


def analyze_report(arr, mode=NODE_TACNODE, seed=0, retries=DEFAULT_RETRIES, budget=None, s=None, alpha=DEFAULT_ALPHA):
    s = arr.s if s is None else s
    conics = arr.conic_objects(s)
    prof = profile(conics, mode, seed, retries, budget)
    k = prof.k
    doc = {
        "field": arr.field if s is None else "Q",
        "s": format_rational(s) if s is not None else None,
        "labels": [c.label for c in conics],
        "mode": mode,
        "seed": seed,
        "profile": prof.to_dict(),
    }
    f = arrangement_polynomial(conics)
    if mode == NODE_TACNODE:
        lhs = 4 * comb(k, 2)
        doc["combinatorial"] = {"lhs": lhs, "n": prof.n, "two_t": 2 * prof.t, "ok": lhs == prof.n + 2 * prof.t}
        doc["bounds"] = evaluate_bounds(k, prof.n, prof.t, alpha).to_dict()
        doc["freeness"] = freeness_dict(f, k, prof.t, budget)
    else:
        doc["combinatorial"] = None
        try:
            doc["tang"] = tang_check(k, prof.t_r, prof.all_through_one_point).to_dict()
        except InputError as exc:
            doc["tang"] = {"name": "tang", "applicable": False, "note": str(exc)}
        doc["freeness"] = freeness_dict(f, budget=budget)
    return doc


def _exponents(fr):
    e = fr.get("exponents")
    return f"({e[0]},{e[1]})" if e else ""


def format_analyze(doc):
    p = doc["profile"]
    fr = doc["freeness"]
    lines = []
    if doc["mode"] == NODE_TACNODE:
        c = doc["combinatorial"]
        free = "YES" if fr["verdict"] == FREE else "NO"
        nf = f"YES {_exponents(fr)}" if fr["verdict"] == NEARLY_FREE else "NO"
        lines.append(
            f"k={p['k']} n={p['n']} t={p['t']}; Eq(comb): {c['lhs']}={c['n']}+{c['two_t']} "
            f"{'OK' if c['ok'] else 'FAIL'}; free: {free}; nearly free: {nf}"
        )
    else:
        tr = ", ".join(f"t_{r}={v}" for r, v in p["t_r"].items())
        lines.append(f"k={p['k']} ordinary: {tr}; all through one point: {p['all_through_one_point']}")
        lines.append(f"freeness: {VERDICT_WORDS[fr['verdict']]} {_exponents(fr)}".rstrip())
    if doc["s"] is not None:
        lines.append(f"specialized at s={doc['s']}")
    lines.append("pairwise patterns:")
    labels = doc["labels"]
    for key, pat in p["pair_patterns"].items():
        i, j = map(int, key.split(","))
        lines.append(f"  {labels[i]} x {labels[j]}: {pat}")
    if "bounds" in doc:
        lines.append(f"bounds (alpha={doc['bounds']['alpha']}):")
        lines.extend("  " + _bound_line(b) for b in doc["bounds"]["bounds"])
    if "tang" in doc:
        lines.append("  " + _bound_line(doc["tang"]))
    return "\n".join(lines)


def _bound_line(b):
    if "lhs" not in b:
        return f"{b['name']}: not applicable ({b['note']})"
    status = "holds" if b["holds"] else "FAILS"
    if not b["applicable"]:
        status += " [not applicable]"
    slack = parse_rational(b["slack"])
    note = f"  ({b['note']})" if b.get("note") else ""
    return f"{b['name']}: {b['lhs']} <= {b['rhs']} {status}, slack {b['slack']} ~ {float(slack):.6g}{note}"


def format_freeness(fr, label=""):
    head = f"{label}d={fr['d']} mdr={fr['mdr']} τ={fr['tau']} {VERDICT_WORDS[fr['verdict']]}"
    if fr["exponents"]:
        head += f", exponents {_exponents(fr)}"
    lines = [head]
    nf = {int(k): v for k, v in fr["nf_dims"].items()}
    if not nf:
        lines.append("N(f) = 0")
    elif len(nf) == 1:
        (deg, dim), = nf.items()
        lines.append(f"N(f) supported in degree {deg}" + (f" (dim {dim})" if dim != 1 else ""))
    else:
        lines.append("N(f) dims: " + ", ".join(f"{k}:{v}" for k, v in sorted(nf.items())))
    if fr["d3"] is not None:
        lines.append(f"d3={fr['d3']} b={fr['b']}")
    if fr["discriminants"]:
        df, dnf = fr["discriminants"]
        lines.append(f"discriminants: free {df}, nearly free {dnf}")
    if not fr["consistent"]:
        lines.append(f"WARNING: du Plessis-Wall test says {fr['dpw_verdict']}")
    return "\n".join(lines)


def _node_tacnode_t(conics, seed, retries, budget):
    if len(conics) < 2:
        return None, None
    try:
        prof = profile(conics, NODE_TACNODE, seed, retries, budget)
    except UnsupportedSingularity:
        return None, None
    return prof.k, prof.t


def freeness_command_report(arr, seed=0, retries=DEFAULT_RETRIES, budget=None, specialize=None):
    conics = arr.conic_objects(None)
    k, t = _node_tacnode_t(conics, seed, retries, budget)
    doc = {"field": arr.field, "labels": [c.label for c in conics]}
    f = arrangement_polynomial(conics)
    doc["freeness"] = freeness_dict(f, k, t, budget)
    doc["specialized"] = None
    doc["agree"] = None
    if specialize is not None:
        if not arr.symbolic:
            raise InputError("--specialize needs an arrangement over Q(s)")
        sc = arr.conic_objects(specialize)
        k2, t2 = _node_tacnode_t(sc, seed, retries, budget)
        spec = freeness_dict(arrangement_polynomial(sc), k2, t2, budget)
        spec["s"] = format_rational(specialize)
        doc["specialized"] = spec
        keys = ("mdr", "tau", "verdict", "exponents")
        doc["agree"] = all(spec[k_] == doc["freeness"][k_] for k_ in keys)
    return doc


# -- subcommands ------------------------------------------------------------------

def cmd_analyze(args):
    arr = load_arrangement(args.file)
    s = _s_value(args.specialize) if args.specialize else None
    doc = analyze_report(arr, args.mode, args.seed, args.retries, _budget(args), s, parse_rational(args.alpha))
    print(_dump(doc) if args.json else format_analyze(doc))
    return EXIT_OK


def cmd_freeness(args):
    arr = load_arrangement(args.file)
    s = _s_value(args.specialize) if args.specialize else None
    doc = freeness_command_report(arr, args.seed, args.retries, _budget(args), s)
    if args.json:
        print(_dump(doc))
    else:
        print(format_freeness(doc["freeness"], "" if not arr.symbolic else "over Q(s): "))
        if doc["specialized"]:
            print(format_freeness(doc["specialized"], f"at s={doc['specialized']['s']}: "))
    if doc["agree"] is False:
        print("warning: the specialization disagrees with the generic answer", file=sys.stderr)
    return EXIT_OK


def bounds_report(k, n, t, alpha=DEFAULT_ALPHA, t_r=None):
    doc = {"k": k, "n": n, "t": t}
    if n is not None and t is not None:
        doc.update(evaluate_bounds(k, n, t, alpha).to_dict())
    if t_r is not None:
        doc["tang"] = tang_check(k, t_r).to_dict()
    return doc


def _parse_tr(text):
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        try:
            r, v = part.split(":")
            out[int(r)] = int(v)
        except ValueError as exc:
            raise InputError(f"bad t_r entry {part!r}; use r:count,r:count") from exc
    return out


def cmd_bounds(args):
    alpha = parse_rational(args.alpha)
    t_r = _parse_tr(args.tr) if args.tr else None
    if args.file:
        arr = load_arrangement(args.file)
        prof = profile(arr.conic_objects(arr.s), NODE_TACNODE, args.seed, args.retries, _budget(args))
        k, n, t = prof.k, prof.n, prof.t
    else:
        if args.k is None or (t_r is None and (args.n is None or args.t is None)):
            raise InputError("give --k with --n and --t (or --tr), or an arrangement file")
        k, n, t = args.k, args.n, args.t
    doc = bounds_report(k, n, t, alpha, t_r)
    if args.json:
        print(_dump(doc))
        return EXIT_OK
    if n is not None and t is not None:
        print(f"k={k} n={n} t={t} alpha={doc['alpha']}")
        for b in doc["bounds"]:
            print("  " + _bound_line(b))
    if "tang" in doc:
        print("  " + _bound_line(doc["tang"]))
    return EXIT_OK


def pencil_report(g1, g2, params, seed=0, retries=DEFAULT_RETRIES, budget=None):
    pen = Pencil(g1, g2, params)
    locus = base_locus(g1, g2, seed, retries)
    rows = verify_prop4(pen, seed, retries=retries, budget=budget)
    return {
        "g1": str(g1),
        "g2": str(g2),
        "params": [format_scalar(t) for t in pen.params],
        "m": len(pen.params),
        "base_locus": locus.to_dict(),
        "rows": [r.to_dict() for r in rows],
        "all_ok": all(r.ok for r in rows),
        "scope": "rational base points only",
    }


def _constant(text, field_):
    c = parse_polynomial(text, field_)
    if c.degree > 0:
        raise InputError(f"pencil parameter {text!r} is not a constant")
    return c.coeff((0, 0, 0))


def cmd_pencil(args):
    if args.file:
        doc = load_json(args.file)
        g1, g2 = doc.get("g1"), doc.get("g2")
        params = doc.get("params", [])
        fld = doc.get("field", "Q")
    else:
        g1, g2, params, fld = args.g1, args.g2, None, args.field
    if args.g1:
        g1 = args.g1
    if args.g2:
        g2 = args.g2
    if args.params:
        params = [p for p in args.params.split(",") if p.strip()]
    if not g1 or not g2 or not params:
        raise InputError("pencil verify needs --g1, --g2 and --params (or a pencil file)")
    field_ = field_from_name(fld)
    P1, P2 = parse_polynomial(g1, field_), parse_polynomial(g2, field_)
    ts = [_constant(str(p), field_) for p in params]
    doc = pencil_report(P1, P2, ts, args.seed, args.retries, _budget(args))
    if args.json:
        print(_dump(doc))
        return EXIT_OK
    loc = doc["base_locus"]
    print(f"pencil g1 = {doc['g1']}, g2 = {doc['g2']}, params {', '.join(doc['params'])} (m={doc['m']})")
    print(f"base locus: total intersection {loc['total']}")
    for p in loc["rational"]:
        print(f"  ({':'.join(p['point'])}) contact {p['contact']}")
    for c in loc["nonrational"]:
        print(f"  {c['classes']} conjugate class(es) of {c['class_degree']} points, contact {c['contact']}")
    print("point            c  m  predicted  mu  tau  ok")
    for r in doc["rows"]:
        pt = "(" + ":".join(r["point"]) + ")"
        print(f"{pt:<16} {r['contact']:>2} {r['m']:>2} {r['predicted']:>10} {r['mu']:>3} {r['tau']:>4}  {'ok' if r['ok'] else 'MISMATCH'}")
    print("(rational base points only)")
    return EXIT_OK


def cmd_experiment(args):
    res = ordinary_experiment(args.m, args.trials, args.seed, pencil=args.pencil, budget=_budget(args))
    if args.out:
        with open(args.out, "w") as fh:
            for r in res.records:
                fh.write(json.dumps(r.to_dict(), sort_keys=True) + "\n")
    doc = res.to_dict()
    if args.json:
        print(_dump(doc))
        return EXIT_OK
    mode = "one pencil" if args.pencil else "independent conics"
    print(f"ordinary {args.m}-fold points, {args.trials} trials, seed {args.seed} ({mode})")
    print(f"mu = {(args.m - 1) ** 2} on every trial")
    print("delta histogram: " + ", ".join(f"{k}: {v}" for k, v in res.histogram.items()))
    ok = sum(r.pattern_ok for r in res.records)
    print(f"tau >= (m-1)^2 - m + 4 on {ok}/{len(res.records)} trials")
    if res.findings:
        print(f"FINDINGS: {len(res.findings)} record(s) outside the expected pattern")
        for r in res.findings:
            print(f"  trial {r.trial} seed {r.seed}: mu={r.mu} tau={r.tau} delta={r.delta}")
    if args.out:
        print(f"records written to {args.out}")
    return EXIT_OK


# -- wiring -----------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for random projections and sampling")
    common.add_argument(
        "--step-budget", type=int, default=None,
        help=f"Buchberger reduction-step cap (default from {STEP_BUDGET_ENV} or 10^6)",
    )
    common.add_argument("--retries", type=int, default=DEFAULT_RETRIES, help="genericity retries")

    parser = _Parser(prog="conic-lab", description="Exact computations on arrangements of plane conics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="singularity profile, bounds and freeness")
    p.add_argument("file", help="arrangement JSON file, or fixture:NAME")
    p.add_argument("--mode", choices=[NODE_TACNODE, ORDINARY], default=NODE_TACNODE)
    p.add_argument("--specialize", metavar="s=VAL", help="bind the parameter s")
    p.add_argument("--alpha", default=str(DEFAULT_ALPHA), help="alpha for the Langer check")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("freeness", parents=[common], help="mdr, Tjurina number, N(f) and the freeness verdict")
    p.add_argument("file", help="arrangement JSON file, or fixture:NAME")
    p.add_argument("--specialize", metavar="s=VAL", help="also compute at s=VAL and compare")
    p.set_defaults(func=cmd_freeness)

    p = sub.add_parser("bounds", parents=[common], help="evaluate the tacnode bounds")
    p.add_argument("file", nargs="?", help="arrangement file to take (k, n, t) from")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--tr", help="t_r profile for the ordinary-point inequality, e.g. 2:12,3:0")
    p.add_argument("--alpha", default=str(DEFAULT_ALPHA))
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("pencil", help="pencil computations")
    psub = p.add_subparsers(dest="pencil_command", required=True, parser_class=_Parser)
    v = psub.add_parser("verify", parents=[common], help="check mu = tau = (m-1)(cm-1) at base points")
    v.add_argument("file", nargs="?", help="pencil JSON file with g1, g2, params")
    v.add_argument("--g1")
    v.add_argument("--g2")
    v.add_argument("--params", help="comma-separated parameter values")
    v.add_argument("--field", default="Q")
    v.set_defaults(func=cmd_pencil)

    p = sub.add_parser("experiment", help="randomized experiments")
    esub = p.add_subparsers(dest="experiment_command", required=True, parser_class=_Parser)
    e = esub.add_parser("ordinary", parents=[common], help="mu and tau at ordinary m-fold points of conics")
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--trials", type=int, default=50)
    e.add_argument("--pencil", action="store_true", help="take the conics from one pencil")
    e.add_argument("--out", help="write one JSON record per trial to this file")
    e.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except UnsupportedSingularity as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ResourceCapExceeded, GenericityFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, NotZeroDimensional) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConicLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
