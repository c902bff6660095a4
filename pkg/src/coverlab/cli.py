"""Command-line front end.

Every command prints one JSON object (or CSV with ``--format csv``) that
carries ``"schema": "1"``, the command name and the fully resolved
configuration.  Rationals are printed as "p/q" strings.

Exit status: 0 on success, 2 for invalid input, 3 when a size limit or
search budget is exceeded.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from coverlab import __version__
from coverlab.config import DEFAULT_NODE_BUDGET, exact_limit, width_limit
from coverlab.errors import CoverError, LimitExceeded
from coverlab.setcover import SOLVERS
from coverlab.sets import CyclicSet, format_rational, format_set, parse_ints, parse_rational, parse_set

SCHEMA = "1"
SOLVER_HELP = "bnb: branch and bound; milp: integer program; auto: bnb, then milp past the node budget"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _q(x):
    return format_rational(Fraction(x))


def _set_arg(text):
    try:
        return parse_set(text)
    except CoverError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _ints_arg(text):
    try:
        return parse_ints(text)
    except CoverError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational_arg(text):
    try:
        return parse_rational(text)
    except CoverError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


# ---------------------------------------------------------------- commands

def cmd_density(args):
    from coverlab.debruijn import covering_density

    d = covering_density(args.set, args.variant, limit=args.width_limit)
    return {"set": str(args.set), "nu": _q(d.nu), "kappa": _q(d.kappa), "eff": _q(d.efficiency)}


def cmd_period(args):
    from coverlab.debruijn import minimal_period

    ell, cycle = minimal_period(args.set, args.variant, limit=args.width_limit)
    return {"set": str(args.set), "period": ell, "mean": _q(cycle.mean),
            "weights": "".join(str(w) for w in cycle.weights)}


def cmd_cover(args):
    from coverlab.debruijn import PeriodicCovering, extract_covering, verify_covering

    if args.period is not None or args.offsets is not None:
        if args.period is None or args.offsets is None:
            raise CoverError("--period and --offsets must be given together")
        C = PeriodicCovering(args.set, args.period, args.offsets)
        source = "given"
    else:
        C = extract_covering(args.set, args.variant, limit=args.width_limit)
        source = "extracted"
    ok, mult = verify_covering(args.set, C)
    return {"set": str(args.set), "source": source, "period": C.period,
            "offsets": format_set(C.offsets), "density": _q(C.density),
            "multiplicity": _q(mult), "verified": ok}


def _cover_result(res):
    return {"tau": res.tau, "kappa": _q(res.multiplicity), "eff": _q(res.efficiency),
            "exact": res.exact}


def cmd_cyclic(args):
    from coverlab.finite import GroupSpec, exact_cover_cyclic, greedy_cover, verify_group_cover

    S = CyclicSet.from_iterable(args.set.elements, args.n)
    if len(S) != args.set.size:
        raise CoverError(f"modulus too small: need n > diam(S) = {args.set.diameter}, got {args.n}")
    G = GroupSpec.cyclic(args.n)
    elems = [(r,) for r in S.residues]
    out = {"set": format_set(S.residues), "n": args.n}
    if args.witness is not None:
        out["witness"] = format_set(args.witness)
        out["verified"] = verify_group_cover(G, elems, [w % args.n for w in args.witness])
        return out
    if args.greedy:
        res = greedy_cover(S)
    else:
        res = exact_cover_cyclic(S, limit=args.exact_limit, node_budget=args.node_budget,
                                 solver=args.solver)
    out.update(_cover_result(res))
    out["witness"] = format_set(res.witness)
    out["verified"] = verify_group_cover(G, elems, res.witness)
    return out


def cmd_interval(args):
    from coverlab.finite import exact_cover_interval, verify_interval_cover

    out = {"set": str(args.set), "n": args.n}
    if args.witness is not None:
        out["witness"] = format_set(args.witness)
        out["verified"] = verify_interval_cover(args.set, args.n, args.witness)
        return out
    res = exact_cover_interval(args.set, args.n, args.method, limit=args.width_limit,
                               node_budget=args.node_budget)
    out.update(_cover_result(res))
    out["witness"] = format_set(res.witness)
    out["verified"] = verify_interval_cover(args.set, args.n, res.witness)
    return out


def _best_to_json(best):
    if best is None:
        return None
    value, witness = best
    v = value if isinstance(value, int) else _q(value)
    return {"value": v, "witness": str(witness)}


def _best_from_json(obj):
    if obj is None:
        return None
    v = obj["value"]
    value = v if isinstance(v, int) else parse_rational(v)
    return value, parse_set(obj["witness"])


def _row_dict(row):
    v = row.value if isinstance(row.value, int) else _q(row.value)
    out = {"parameter": list(row.parameter), "value": v, "witness": str(row.witness),
           "bracketed": row.bracketed}
    if row.unrestricted is not None:
        u = row.unrestricted if isinstance(row.unrestricted, int) else _q(row.unrestricted)
        out["unrestricted"] = u
        out["unrestricted_witness"] = str(row.unrestricted_witness)
    return out


def cmd_sweep(args):
    from coverlab import sweeps

    k = args.k if args.mode == "lsk" else None
    if args.mode == "lsk" and k is None:
        raise CoverError("--mode lsk needs --k")
    if args.merge:
        parts = []
        for path in args.merge:
            with open(path) as fh:
                doc = json.load(fh)
            parts.append({int(d): _best_from_json(b) for d, b in doc["diameters"].items()})
        bests = sweeps.merge_maxima(parts)
        return {"rows": [_row_dict(r) for r in sweeps.period_rows(bests, args.s_max, k)]}
    if args.shard is not None:
        limit = args.limit
        if limit is None:
            limit = sweeps.DEFAULT_SWEEP_LIMIT_K if k is not None and k <= 4 else sweeps.DEFAULT_SWEEP_LIMIT
        sweeps._limit_check(args.s_max, limit, "period sweep")
        bests = sweeps.diameter_bests("period", args.s_max, k, shards=args.shards, shard=args.shard,
                                      check=args.check, workers=args.workers)
        return {"diameters": {str(d): _best_to_json(b) for d, b in sorted(bests.items())}}
    if k is None:
        rows = sweeps.sweep_period(args.s_max, limit=args.limit, workers=args.workers,
                                   shards=args.shards, check=args.check)
    else:
        rows = sweeps.sweep_period_k(args.s_max, k, limit=args.limit, workers=args.workers,
                                     shards=args.shards, check=args.check)
    return {"rows": [_row_dict(r) for r in rows]}


def cmd_alpha(args):
    from coverlab import sweeps

    row = sweeps.alpha_upper(args.k, args.d_max, max_cost=args.max_cost, workers=args.workers,
                             shards=args.shards, check=args.check)
    return {"rows": [_row_dict(row)]}


def cmd_random(args):
    from coverlab.randomlab import ExperimentSpec, efficiency_experiment

    spec = ExperimentSpec(args.n, args.k, args.trials, args.mode, args.seed, args.threshold,
                          args.node_budget, args.solver)
    rep = efficiency_experiment(spec, workers=args.workers)

    def opt(x):
        return None if x is None else _q(x)

    return {
        "mean_kappa": opt(rep.mean_kappa), "min_kappa": opt(rep.min_kappa),
        "max_kappa": opt(rep.max_kappa), "fraction_efficient": opt(rep.fraction_efficient),
        "censored": rep.censored,
        "trials": [{"index": t.index, "set": format_set(t.subset.residues), "tau": t.tau,
                    "kappa": opt(t.kappa), "censored": t.censored} for t in rep.trials],
    }


def cmd_intervals(args):
    from coverlab import realline

    if args.example is not None:
        if args.eps is None:
            raise CoverError("--example needs --eps")
        S = realline.example_set(args.example, args.eps)
    elif args.spec is not None:
        S = realline.parse_intervals(args.spec)
    else:
        raise CoverError("give --spec or --example")
    out = {"set": str(S), "measure": _q(S.measure)}
    if args.example is not None:
        out["upper_bound"] = _q(realline.example_upper_bound(args.example, args.eps))
    if args.period is not None or args.offsets is not None:
        if args.period is None or args.offsets is None:
            raise CoverError("--period and --offsets must be given together")
        offsets = [parse_rational(t) for t in args.offsets.split(",") if t.strip()]
        cert = realline.RealCoveringCert(S, args.period, offsets, args.method if args.method != "auto" else "I")
        out["certificate"] = cert.to_dict()
        out["verified"] = realline.verify_interval_covering(S, cert)
        return out
    if args.method == "auto":
        bound, cert = realline.best_lower_bound(S, args.delta, limit=args.width_limit)
        certs = [cert]
    elif args.method == "grid":
        cert = realline.grid_certificate(S, args.delta, limit=args.width_limit)
        if cert is None:
            raise CoverError("no grid cell lies inside S for this delta")
        certs = [cert]
    elif args.method == "I" and S.k != 2:
        certs = [realline.single_interval_certificate(S)]
    else:
        a, b, c, _ = realline.two_interval_params(S)
        certs = [x for x in realline.two_interval_methods(a, b, c) if x.method == args.method]
        if not certs:
            raise CoverError(f"method {args.method} does not apply to a={a}, b={b}, c={c}")
    cert = certs[0]
    out["lower_bound"] = _q(cert.efficiency)
    out["certificate"] = cert.to_dict()
    out["verified"] = realline.verify_interval_covering(cert.base, cert)
    return out


# ---------------------------------------------------------------- parser

def build_parser():
    p = _Parser(prog="coverlab", description="Exact covering numbers, densities and efficiencies.")
    p.add_argument("--version", action="version", version=f"coverlab {__version__}")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_set(sp, required=True):
        sp.add_argument("--set", type=_set_arg, required=required, help='integers, e.g. "0,1,3"')

    def with_graph(sp):
        sp.add_argument("--variant", choices=("gs", "gs-reduced"), default="gs-reduced")
        sp.add_argument("--width-limit", type=_positive, default=None,
                        help="largest diameter for the frontier graphs (env COVER_WIDTH_LIMIT)")

    sp = sub.add_parser("density", help="covering density nu, multiplicity and efficiency of S in Z")
    with_set(sp)
    with_graph(sp)
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("period", help="least period of an optimal periodic covering")
    with_set(sp)
    with_graph(sp)
    sp.set_defaults(func=cmd_period)

    sp = sub.add_parser("cover", help="extract an optimal periodic covering, or verify a given one")
    with_set(sp)
    with_graph(sp)
    sp.add_argument("--period", type=_positive, help="verify this period (with --offsets)")
    sp.add_argument("--offsets", type=_ints_arg, help="offsets within one period")
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("cyclic", help="covering number of S in Z_n")
    with_set(sp)
    sp.add_argument("--n", type=_positive, required=True)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="branch and bound (default)")
    mode.add_argument("--greedy", action="store_true", help="greedy upper bound")
    sp.add_argument("--witness", type=_ints_arg, help="only verify this translate set")
    sp.add_argument("--exact-limit", type=_positive, default=None,
                    help="largest n for exact search (env COVER_EXACT_LIMIT)")
    sp.add_argument("--node-budget", type=_positive, default=DEFAULT_NODE_BUDGET)
    sp.add_argument("--solver", choices=SOLVERS, default="auto", help=SOLVER_HELP)
    sp.set_defaults(func=cmd_cyclic)

    sp = sub.add_parser("interval", help="tau(S, n): translates of S covering {1..n}")
    with_set(sp)
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--method", choices=("dp", "bnb"), default="dp")
    sp.add_argument("--witness", type=_ints_arg, help="only verify this translate set")
    sp.add_argument("--width-limit", type=_positive, default=None)
    sp.add_argument("--node-budget", type=_positive, default=DEFAULT_NODE_BUDGET)
    sp.set_defaults(func=cmd_interval)

    def with_parallel(sp):
        sp.add_argument("--workers", type=_positive, default=1)
        sp.add_argument("--shards", type=_positive, default=1)
        sp.add_argument("--check", action="store_true", help="check the period and H_k bounds on every set")

    sp = sub.add_parser("sweep", help="exhaustive longest-period sweeps")
    sp.add_argument("--mode", choices=("ls", "lsk"), default="ls")
    sp.add_argument("--s-max", type=_nonnegative, required=True)
    sp.add_argument("--k", type=_positive)
    sp.add_argument("--limit", type=_nonnegative, default=None, help="largest s_max accepted")
    with_parallel(sp)
    sp.add_argument("--shard", type=_nonnegative, help="scan only this shard; prints per-diameter maxima")
    sp.add_argument("--merge", nargs="+", metavar="FILE", help="merge shard outputs into rows")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("alpha", help="least efficiency over k-subsets of [0, D]")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--d-max", type=_nonnegative, default=None)
    sp.add_argument("--max-cost", type=_positive, default=10 ** 11)
    with_parallel(sp)
    sp.set_defaults(func=cmd_alpha)

    sp = sub.add_parser("random", help="efficiency of random k-subsets of Z_n")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--trials", type=_positive, default=100)
    sp.add_argument("--mode", choices=("exact", "greedy"), default="exact")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threshold", type=_rational_arg, default=Fraction(9, 10))
    sp.add_argument("--node-budget", type=_positive, default=DEFAULT_NODE_BUDGET)
    sp.add_argument("--solver", choices=SOLVERS, default="auto", help=SOLVER_HELP)
    sp.add_argument("--workers", type=_positive, default=1)
    sp.set_defaults(func=cmd_random)

    sp = sub.add_parser("intervals", help="efficiency bounds for unions of intervals in R")
    sp.add_argument("--spec", help='intervals "lo,hi;lo,hi" with rational endpoints')
    sp.add_argument("--example", choices=("ER1", "ER2"))
    sp.add_argument("--eps", type=_rational_arg)
    sp.add_argument("--method", choices=("auto", "I", "II", "III", "IV", "grid"), default="auto")
    sp.add_argument("--delta", type=_rational_arg)
    sp.add_argument("--period", type=_rational_arg, help="verify this certificate (with --offsets)")
    sp.add_argument("--offsets", help="comma-separated rational offsets")
    sp.add_argument("--width-limit", type=_positive, default=None)
    sp.set_defaults(func=cmd_intervals)
    return p


def _config(args):
    cfg = {}
    for key, value in sorted(vars(args).items()):
        if key == "func":
            continue
        if isinstance(value, Fraction):
            value = _q(value)
        elif isinstance(value, tuple):
            value = format_set(value)
        elif value is not None and not isinstance(value, (int, str, bool, list)):
            value = str(value)
        cfg[key] = value
    cfg["exact_limit"] = exact_limit(cfg.get("exact_limit"))
    cfg["width_limit"] = width_limit(cfg.get("width_limit"))
    return cfg


def _csv(doc):
    buf = io.StringIO()
    rows = doc.get("rows") or doc.get("trials")
    if rows is None and "diameters" in doc:
        rows = [{"diameter": d, **(b or {})} for d, b in doc["diameters"].items()]
    if rows is None:
        rows = [{k: v for k, v in doc.items() if k not in ("config", "schema")}]
    fields = []
    for r in rows:
        for key in r:
            if key not in fields:
                fields.append(key)
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in r.items()})
    return buf.getvalue()


def run(argv=None, out=None, err=None):
    """Parse ``argv``, run the command, write the result; returns the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"coverlab: error: {exc}", file=err)
        return 2
    try:
        cfg = _config(args)
        result = args.func(args)
    except LimitExceeded as exc:
        print(f"coverlab: limit exceeded: {exc}", file=err)
        return 3
    except (CoverError, ValueError) as exc:
        print(f"coverlab: error: {exc}", file=err)
        return 2
    doc = {"schema": SCHEMA, "command": args.command, "config": cfg}
    doc.update(result)
    if args.format == "csv":
        out.write(_csv(doc))
    else:
        out.write(json.dumps(doc, indent=None, sort_keys=False) + "\n")
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
