"""Command-line interface.

Exit status is 0 on success, 2 on a usage error and 1 when an input violates
a mathematical precondition.  Floats are printed with 12 significant digits so
that identical runs produce byte-identical output.

CSV column orders:

    ap      p,a_p[,a_p_check,match]
    points  x,y
    scan    D,sign,value,error,conductor,cutoff,vanished
    gv      X,normalized_sum
    growth  X,S
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional, Sequence

from sympy import primerange

from . import averages, charsums, curves, kubota, lfunctions
from .errors import DomainError
from .rings import E, G, Ring, parse_literal
from .symbols import cubic_symbol, quadratic_symbol

THREADS_ENV = "CUBICTWIST_THREADS"
SEED_ENV = "CUBICTWIST_SEED"

SCAN_COLUMNS = ("D", "sign", "value", "error", "conductor", "cutoff", "vanished")


def fmt(x: float) -> str:
    return format(float(x), ".12g")


def _bool(b: bool) -> str:
    return "true" if b else "false"


# ---------------------------------------------------------------------------
# readers for the emitted formats


def read_csv(text: str) -> list[dict[str, str]]:
    """Rows of a CSV table emitted by this CLI, keyed by column name."""
    return list(csv.DictReader(io.StringIO(text)))


def read_json(text: str):
    return json.loads(text)


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# shared plumbing


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    return max(1, int(os.environ.get(THREADS_ENV, "1")))


def _cache(args) -> lfunctions.LValueCache:
    path = args.cache if args.cache is not None else os.environ.get(lfunctions.CACHE_ENV)
    return lfunctions.LValueCache(path or None)


def _l_value_job(job):
    D, mult = job
    return lfunctions.l_value(D, mult)


def _prefetch(cache: lfunctions.LValueCache, Ds: Iterable[int], args) -> None:
    """Compute missing L-values with a worker pool; the parent writes the cache in D order."""
    mult = args.cutoff_mult
    todo = sorted({D for D in Ds if args.recompute or cache.lookup(D, mult) is None})
    if not todo:
        return
    n = _threads(args)
    if n == 1:
        results = [lfunctions.l_value(D, mult) for D in todo]
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(_l_value_job, [(D, mult) for D in todo], chunksize=8))
    for est in results:
        cache.store(est)


def _lit(text: str, ring: Ring):
    try:
        return parse_literal(text, ring)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _parse_matrix(text: str, ring: Ring) -> kubota.IntMatrix:
    rows = [r for r in text.replace(" ", "").split(";") if r]
    entries = [_lit(z, ring) for r in rows for z in r.split(",")]
    return kubota.IntMatrix.from_entries(entries, ring)


# ---------------------------------------------------------------------------
# commands


def cmd_symbol(args) -> str:
    ring = E if args.kind == "cubic" else G
    a, b = _lit(args.a, ring), _lit(args.b, ring)
    val = cubic_symbol(a, b) if args.kind == "cubic" else quadratic_symbol(a, b)
    if args.json:
        return _json({"exponent": val.exponent, "value": str(val)})
    return ("NotCoprime" if val.exponent is None else str(val.exponent)) + "\n"


def cmd_kubota(args) -> str:
    conv = kubota.Convention(args.convention)
    if args.kind == "check-hom":
        seed = args.seed if args.seed is not None else int(os.environ.get(SEED_ENV, "0"))
        return _json(kubota.check_homomorphism(args.n, args.samples, seed, conv))
    if args.matrix is None:
        raise UsageError("--matrix is required")
    if args.kind == "gl2":
        val = kubota.gl2_kappa(_parse_matrix(args.matrix, G), conv)
        return _json({"exponent": val.exponent, "value": str(val)})
    g = _parse_matrix(args.matrix, E)
    inv = kubota.gl3_invariants(g)
    val = kubota.gl3_kappa(g)
    return _json({
        "exponent": val.exponent,
        "value": str(val),
        "invariants": [str(z) for z in (inv.A1, inv.B1, inv.C1, inv.A2, inv.B2, inv.C2)],
        "factorization": [str(z) for z in (inv.r1, inv.r2, inv.B1p, inv.B2p, inv.C1p, inv.C2p)],
    })


def cmd_ap(args) -> str:
    D = curves.require_cubefree(args.D)
    rows = []
    for p in primerange(2, args.pmax + 1):
        bad = (6 * D) % p == 0
        if args.method == "character":
            rows.append((p, lfunctions.hecke_coefficient(D, p).a_n))
        elif bad:
            continue
        elif args.method == "pointcount":
            rows.append((p, lfunctions.pointcount_ap(D, p)))
        else:
            h = lfunctions.hecke_coefficient(D, p).a_n
            q = lfunctions.pointcount_ap(D, p)
            rows.append((p, h, q, _bool(h == q)))
    header = ("p", "a_p", "a_p_check", "match") if args.method == "both" else ("p", "a_p")
    return _csv(header, rows)


def _est_record(est: lfunctions.LValueEstimate) -> dict:
    return {
        "D": est.D,
        "value": float(fmt(est.value)),
        "error": float(fmt(est.error_bound)),
        "sign": est.sign_label,
        "conductor": est.conductor_used,
        "vanished": est.vanished,
    }


def cmd_lvalue(args) -> str:
    curves.require_cubefree(args.D)
    cache = _cache(args)
    est = cache.get(args.D, args.cutoff_mult, args.recompute)
    rec = _est_record(est)
    if args.json:
        return _json(rec)
    text = {k: fmt(v) if isinstance(v, float) else v for k, v in rec.items()}
    text["vanished"] = _bool(est.vanished)
    return "".join(f"{k}={text[k]}\n" for k in ("D", "value", "error", "sign", "conductor", "vanished"))


def cmd_points(args) -> str:
    pts = curves.search_points(args.D, args.height)
    return _csv(("x", "y"), ((str(p.x), str(p.y)) for p in pts))


def cmd_scan(args) -> str:
    if (args.cls is None) != (args.mod is None):
        raise UsageError("--class and --mod must be given together")
    flt = averages.Filter.congruence(args.cls, args.mod) if args.mod is not None else averages.Filter()
    Ds = flt.members(args.xmax)
    cache = _cache(args)
    _prefetch(cache, Ds, args)
    rows = []
    for D in Ds:
        e = cache.get(D, args.cutoff_mult)
        rows.append((e.D, e.sign_label, fmt(e.value), fmt(e.error_bound), e.conductor_used,
                     fmt(e.cutoff), _bool(e.vanished)))
    return _csv(SCAN_COLUMNS, rows)


def cmd_stats(args) -> str:
    cache = _cache(args)
    if args.kind == "zk":
        if args.xmax is None:
            raise UsageError("--xmax is required")
        _prefetch(cache, averages.Filter().members(args.xmax), args)
        z = averages.zk_vanishing_stats(args.xmax, cache, args.cutoff_mult)
        return _json({"xmax": args.xmax, "fraction": float(fmt(z.fraction)),
                      "fraction_half": float(fmt(z.fraction_half)),
                      "counts": z.counts, "counts_half": z.counts_half})
    if args.kind == "gv":
        if args.xmax is None:
            raise UsageError("--xmax is required")
        ps = [p for p in primerange(2, args.xmax) if p != 3]
        _prefetch(cache, ps + [p * p for p in ps], args)
        rows = averages.gv_probe(args.xmax, cache, args.cutoff_mult)
        return _csv(("X", "normalized_sum"), ((X, fmt(v)) for X, v in rows))
    if args.kind == "growth":
        if args.xmax is None:
            raise UsageError("--xmax is required")
        _prefetch(cache, averages.Filter().members(args.xmax), args)
        lo = args.xmin if args.xmin is not None else max(3, args.xmax // 10)
        pts = [x for x in averages.checkpoints(args.xmax, 3) if x >= lo]
        if len(pts) < 4:
            step = max(1, (args.xmax - lo) // 7)
            pts = sorted(set(range(lo, args.xmax + 1, step)) | {args.xmax})
        table = averages.sum_central_values(args.xmax, cache=cache, points=pts,
                                            cutoff_mult=args.cutoff_mult)
        fit = averages.growth_fit(table)
        return _json({
            "exponent": float(fmt(fit.exponent)), "constant": float(fmt(fit.constant)),
            "log_preferred": fit.log_preferred, "residual": float(fmt(fit.residual)),
            "log_constant": float(fmt(fit.log_constant)), "log_residual": float(fmt(fit.log_residual)),
            "degenerate": fit.degenerate, "sample_range": list(fit.sample_range),
            "table": [[X, float(fmt(S))] for X, S in table],
        })
    if args.k is None or args.w is None or args.bound is None:
        raise UsageError("stats tail needs --k, --w and --bound")
    t = averages.tail_check(args.k, args.w, args.bound, cache, args.cutoff_mult)
    return _json({"k": args.k, "w": args.w, "bound": args.bound,
                  "partial_sum": float(fmt(t.partial_sum)), "decay_flag": t.decay_flag,
                  "slope": None if t.slope != t.slope else float(fmt(t.slope))})


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise UsageError("--w expects re,im")
    return complex(float(parts[0]), float(parts[1]))


def cmd_tpoly(args) -> str:
    m, n = _lit(args.m, E), _lit(args.n, E)
    w = _parse_complex(args.w)
    terms = charsums.t_polynomial_terms(m, n, w, args.alpha_max)
    total = charsums.t_polynomial(m, n, w, args.alpha_max)
    return _json({
        "value_re": float(fmt(total.real)),
        "value_im": float(fmt(total.imag)),
        "terms": [
            {"summand": t.summand, "alpha": t.alpha, "delta": t.delta,
             "re": float(fmt(t.value.real)), "im": float(fmt(t.value.imag))}
            for t in terms
        ],
    })


# ---------------------------------------------------------------------------
# parser


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--seed", type=int, help="seed for sampling commands")
    common.add_argument("--threads", type=int, help=f"worker processes (env {THREADS_ENV})")
    common.add_argument("--cache", help=f"L-value cache CSV (env {lfunctions.CACHE_ENV})")
    common.add_argument("--recompute", action="store_true", help="ignore cached L-values")
    common.add_argument("--cutoff-mult", type=float, default=lfunctions.DEFAULT_CUTOFF_MULT)

    p = argparse.ArgumentParser(prog="cubictwist", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("symbol", parents=[common], help="cubic or quadratic residue symbol")
    s.add_argument("kind", choices=("cubic", "quadratic"))
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_symbol)

    s = sub.add_parser("kubota", parents=[common], help="Kubota symbols on congruence subgroups")
    s.add_argument("kind", choices=("gl2", "gl3", "check-hom"))
    s.add_argument("--matrix", help="rows separated by ';', entries by ','")
    s.add_argument("--convention", choices=("standard", "paper"), default="standard")
    s.add_argument("--n", type=int, choices=(2, 3), default=3)
    s.add_argument("--samples", type=int, default=100)
    s.set_defaults(func=cmd_kubota)

    s = sub.add_parser("ap", parents=[common], help="Frobenius traces a_p")
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--method", choices=("character", "pointcount", "both"), default="character")
    s.set_defaults(func=cmd_ap)

    s = sub.add_parser("lvalue", parents=[common], help="central value L(E_D, 1)")
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_lvalue)

    s = sub.add_parser("points", parents=[common], help="rational points on x^3 + y^3 = D")
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--height", type=int, required=True)
    s.set_defaults(func=cmd_points)

    s = sub.add_parser("scan", parents=[common], help="L-values over cube-free D <= xmax")
    s.add_argument("--xmax", type=int, required=True)
    s.add_argument("--class", dest="cls", type=int)
    s.add_argument("--mod", type=int)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("stats", parents=[common], help="family statistics")
    s.add_argument("kind", choices=("zk", "gv", "growth", "tail"))
    s.add_argument("--xmax", type=int)
    s.add_argument("--xmin", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--w", type=float)
    s.add_argument("--bound", type=int)
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("tpoly", parents=[common], help="the Dirichlet polynomial T(w)_{m,n}")
    s.add_argument("--m", required=True)
    s.add_argument("--n", required=True)
    s.add_argument("--w", required=True, help="re,im")
    s.add_argument("--alpha-max", type=int, required=True)
    s.set_defaults(func=cmd_tpoly)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"cubictwist: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"cubictwist: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
