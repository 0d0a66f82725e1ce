"""Command-line entry point: hl, hall, enumerate, measure, verify."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction

from . import hallconst, identities, measures, modlat
from . import partitions as pt
from .basering import is_prime, make_cyclic_ring, make_galois_ring
from .symfunc import hl_p, hl_q, skew

SUITES = ("classical-hall", "thm1.1-alt", "thm1.1-her", "thm1.2", "prop1.3", "lemma5.2",
          "lemma5.3", "thm5.1", "thm5.4-aut", "appendixA", "skew-cauchy", "remark-series")

SUITE_DEFAULTS = {
    "classical-hall": {"tmax": 4, "primes": [2, 3]},
    "thm1.1-alt": {"tmax": 3, "primes": [2, 3]},
    "thm1.1-her": {"tmax": 3, "primes": [3, 5]},
    "thm1.2": {"q": 3, "L": 30},
    "prop1.3": {"L": 14},
    "lemma5.2": {"tmax": 3, "primes": [3]},
    "lemma5.3": {"tmax": 6, "primes": [2, 3]},
    "thm5.1": {"tmax": 6, "L": 14},
    "thm5.4-aut": {"primes": None},
    "appendixA": {"tmax": 6},
    "skew-cauchy": {"tmax": 12},
    "remark-series": {"tmax": 3, "primes": [2, 3]},
}

HERMITIAN_SIZE_BOUND = 20000
ENV_JOBS = "PAIREDHALL_JOBS"


class UsageError(ValueError):
    pass


# ------------------------------------------------------------------ suite tasks
# Every task is a module-level function returning a list of records, so it can be
# shipped to a worker process.

def _t_hall_pair(kind, mu, nu, primes, size_bound):
    return hallconst.verify_pair(kind, mu, nu, primes, size_bound)


def _t_moment(kind, u, nu, q, L, tol):
    closed = measures.hom_moment_closed(kind, u, nu, q)
    emp, unassigned = measures.hom_moment_empirical(kind, u, nu, q, L)
    diff = abs(emp - float(closed))
    return [{"id": "hom-moment", "kind": kind, "u": u, "nu": list(nu), "q": q, "L": L,
             "closed": str(closed), "empirical": emp, "diff": diff, "bound": tol,
             "unassigned_mass": unassigned, "status": "pass" if diff <= tol else "fail"}]


def _t_moment_exact(kind, nu, q, expected):
    got = measures.hom_moment_closed(kind, 0, nu, q)
    return [{"id": "hom-moment-exact", "kind": kind, "u": 0, "nu": list(nu), "q": q,
             "closed": str(got), "expected": str(expected), "status": "pass" if got == expected else "fail"}]


def _t_hl_moment(a, t, nu, L, tol):
    return [identities.check_hl_moment([Fraction(x) for x in a], Fraction(t), nu, L, tol).to_json()]


def _t_norm_sphere(lam, p):
    got = modlat.count_norm_sphere(lam, p)
    m = max(pt.multiplicities(lam).values())
    q = Fraction(p)
    formula = q ** (2 * pt.weight(lam) - lam[0]) * (1 - (-q) ** (-m))
    return [{"id": "norm-sphere", "lambda": list(lam), "p": p, "brute": got, "formula": str(formula),
             "status": "pass" if got == formula else "fail"}]


def _t_sum_of_skew(lam, t, nus):
    return [identities.check_sum_of_skew(lam, nu, Fraction(t)).to_json() for nu in nus]


def _t_hom_decomposition(lam, nu, p):
    return [identities.check_hom_decomposition(lam, nu, p).to_json()]


def _t_uprob(kind, u, q, lams, L, tol):
    spec = measures.UMeasureSpec(kind, u, q, L, tol)
    out = []
    for lam in lams:
        r = measures.u_prob_forms(spec, lam)
        out.append({"id": "u-prob-forms", "kind": spec.kind, "u": u, "q": q, "lambda": list(lam),
                    "status": "pass" if r.agree else "fail"})
    _, unassigned = measures.truncated_table(spec)
    out.append({"id": "u-prob-mass", "kind": spec.kind, "u": u, "q": q, "L": L,
                "unassigned_mass": unassigned, "bound": tol,
                "status": "pass" if unassigned <= tol else "fail"})
    return out


def _t_aut(kind, lam, p):
    brute = modlat.count_paired_automorphisms(kind, lam, p)
    formula = measures.aut_formula(kind, lam, p)
    return [{"id": "automorphisms", "kind": kind, "lambda": list(lam), "p": p, "brute": brute,
             "formula": str(formula), "status": "pass" if brute == formula else "fail"}]


def _t_binomial_tail(n, t, tmax):
    out = []
    for l1 in range(tmax + 1):
        for n1 in range(tmax + 1):
            out.append(identities.check_binomial_tail_sum(n, l1, n1, Fraction(t)).to_json())
    for m in range(tmax + 1):
        out.append(identities.check_pascal_step(n + tmax, m, Fraction(t)).to_json())
    return out


def _t_conjugate(lam, t, nus):
    return [identities.check_conjugate_identity(lam, nu, Fraction(t)).to_json() for nu in nus]


def _t_skew_cauchy(mu, nu, max_weight):
    return [identities.check_skew_cauchy(mu, nu, Fraction(1, 3), Fraction(1, 4), Fraction(1, 5),
                                         max_weight).to_json()]


def _t_subgroup_series(nu, u, p):
    return [identities.check_subgroup_series(nu, u, p).to_json()]


T_GRID = ("1/2", "1/3", "3/7", "-2/5")


def suite_tasks(suite: str, cfg: dict) -> list:
    d = dict(SUITE_DEFAULTS[suite])
    for k in ("tmax", "primes", "L"):
        if cfg.get(k) is not None:
            d[k] = cfg[k]
    tol = cfg.get("tol")
    tasks = []
    if suite in ("classical-hall", "thm1.1-alt", "thm1.1-her"):
        kind = {"classical-hall": "classical", "thm1.1-alt": "alternating", "thm1.1-her": "hermitian"}[suite]
        if kind == "hermitian" and any(p == 2 for p in d["primes"]):
            raise UsageError("hermitian suites need odd primes")
        bound = HERMITIAN_SIZE_BOUND if kind == "hermitian" else modlat.DEFAULT_SIZE_BOUND
        for mu, nu in hallconst.pairs_within(kind, d["tmax"]):
            tasks.append((_t_hall_pair, (kind, mu, nu, tuple(d["primes"]), bound)))
    elif suite == "thm1.2":
        tol = tol or 1e-5
        for kind in measures.MEASURE_KINDS:
            for u in (0, 1):
                for nu in [(1,), (2,), (1, 1)]:
                    tasks.append((_t_moment, (kind, u, nu, d["q"], d["L"], tol)))
        tasks.append((_t_moment_exact, ("nopairing", (1,), 3, Fraction(2))))
        for q in (2, 3):
            tasks.append((_t_moment_exact, ("alternating", (1,), q, Fraction(1 + q))))
    elif suite == "prop1.3":
        tol = tol or 1e-5
        for a in (("1/2",), ("1/2", "1/4")):
            for nu in [(1,), (2,), (1, 1)]:
                tasks.append((_t_hl_moment, (a, "1/3", nu, d["L"], tol)))
    elif suite == "lemma5.2":
        for p in d["primes"]:
            if p == 2:
                raise UsageError("norm spheres need odd primes")
            for lam in pt.iterate(d["tmax"]):
                if lam:
                    tasks.append((_t_norm_sphere, (lam, p)))
    elif suite == "lemma5.3":
        nus = tuple(pt.iterate(d["tmax"]))
        for t in T_GRID:
            for lam in pt.iterate(d["tmax"]):
                tasks.append((_t_sum_of_skew, (lam, t, nus)))
        small = min(3, d["tmax"])
        for p in d["primes"]:
            for lam in pt.iterate(small):
                for nu in pt.iterate(small):
                    tasks.append((_t_hom_decomposition, (lam, nu, p)))
    elif suite == "thm5.1":
        tol = tol or 1e-6
        lams = tuple(pt.iterate(d["tmax"]))
        for kind in measures.MEASURE_KINDS:
            for q in ((3, 5) if kind == "hermitian" else (2, 3)):
                for u in (0, 1, 2):
                    tasks.append((_t_uprob, (kind, u, q, lams, d["L"], tol)))
    elif suite == "thm5.4-aut":
        for kind, primes in (("classical", (2, 3)), ("alternating", (2, 3)), ("hermitian", (3, 5))):
            for p in d["primes"] or primes:
                for lam in [(1,), (2,), (1, 1)]:
                    tasks.append((_t_aut, (kind, lam, p)))
    elif suite == "appendixA":
        for t in ("1/2", "-1/3"):
            for n in range(d["tmax"] + 1):
                tasks.append((_t_binomial_tail, (n, t, d["tmax"])))
        small = min(4, d["tmax"])
        nus = tuple(pt.iterate(small))
        for lam in pt.iterate(small):
            tasks.append((_t_conjugate, (lam, "2/5", nus)))
    elif suite == "skew-cauchy":
        for mu in [(), (1,), (2,)]:
            for nu in [(), (1,), (1, 1)]:
                tasks.append((_t_skew_cauchy, (mu, nu, d["tmax"])))
    elif suite == "remark-series":
        for p in d["primes"]:
            for nu in pt.iterate(d["tmax"]):
                for u in (0, 1, 2):
                    tasks.append((_t_subgroup_series, (nu, u, p)))
    return tasks


def _run_task(task):
    fn, args = task
    return fn(*args)


def run_suite(suite: str, cfg: dict, jobs: int = 1) -> list[dict]:
    tasks = suite_tasks(suite, cfg)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_run_task, tasks))
    else:
        chunks = [_run_task(t) for t in tasks]
    records = [dict(r, suite=suite) for chunk in chunks for r in chunk]
    records.sort(key=lambda r: json.dumps(r, sort_keys=True, default=str))
    return records


# ------------------------------------------------------------------ output

def _emit(records, summary, fmt, out):
    if fmt == "csv":
        keys = sorted({k for r in records for k in r})
        w = csv.DictWriter(out, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in records:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        if summary is not None:
            out.write("# " + json.dumps(summary, sort_keys=True) + "\n")
        return
    for r in records:
        out.write(json.dumps(r, sort_keys=True, default=str) + "\n")
    if summary is not None:
        out.write(json.dumps(summary, sort_keys=True) + "\n")


def _summary(records, args, extra=None):
    s = {"summary": True, "total": len(records),
         "pass": sum(r.get("status") == "pass" for r in records),
         "fail": sum(r.get("status") == "fail" for r in records)}
    if extra:
        s.update(extra)
    if not args.no_timestamp:
        s["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return s


# ------------------------------------------------------------------ config

def read_config(path: str) -> dict:
    """key = value lines; '#' starts a comment. Keys mirror the long flags."""
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key = value")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def _int_list(text):
    return [int(x) for x in str(text).replace(" ", "").split(",") if x]


def _apply_config(args, parser):
    if not getattr(args, "config", None):
        return
    cfg = read_config(args.config)
    defaults = {a.dest: a.default for a in parser._actions}
    conv = {"tmax": int, "L": int, "tol": float, "seed": int, "jobs": int, "primes": _int_list,
            "count": int, "u": int, "p": int, "n": int, "no_timestamp": lambda v: v.lower() in ("1", "true", "yes")}
    for k, v in cfg.items():
        if not hasattr(args, k):
            raise UsageError(f"unknown config key {k!r}")
        if getattr(args, k) == defaults.get(k):
            setattr(args, k, conv.get(k, str)(v))


def _validate_primes(primes):
    for p in primes or []:
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")


# ------------------------------------------------------------------ commands

def _partition_arg(text):
    try:
        return pt.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _tsub_arg(text):
    try:
        c, k = text.split(",")
        return int(c), int(k)
    except ValueError:
        raise argparse.ArgumentTypeError("tsub is c,k meaning t -> c*t^k")


def cmd_hl(args, out):
    lam = args.lam
    n = args.n if args.n is not None else max(len(lam), 1)
    if args.mu is not None:
        f = skew(args.kind, lam, args.mu, n, args.tsub)
    else:
        f = (hl_p if args.kind == "P" else hl_q)(lam, n, args.tsub, args.method)
    rec = {"kind": args.kind, "lambda": list(lam), "nvars": n, **f.to_json()}
    if args.mu is not None:
        rec["mu"] = list(args.mu)
    out.write(json.dumps(rec, sort_keys=True) + "\n")
    return 0


def cmd_hall(args, out):
    table = hallconst.symbolic_constants(args.kind, args.mu, args.nu, args.tmax)
    out.write(json.dumps(table.to_json(), sort_keys=True) + "\n")
    return 0


def cmd_enumerate(args, out):
    p = args.p
    if args.kind == "hermitian":
        ring = make_galois_ring(p, max(args.lam[:1] or (1,))).describe()
        count = modlat.count_G_paired("hermitian", args.lam, args.mu, args.nu, p, args.size_bound)
    else:
        ring = make_cyclic_ring(p, max(args.lam[:1] or (1,))).describe()
        if args.kind == "classical":
            count = modlat.count_G_classical(args.lam, args.mu, args.nu, p, 1, args.size_bound)
        else:
            count = modlat.count_G_paired("alternating", args.lam, args.mu, args.nu, p, args.size_bound)
    rec = {"kind": args.kind, "ring": ring, "lambda": list(args.lam), "mu": list(args.mu),
           "nu": list(args.nu), "count": count}
    out.write(json.dumps(rec, sort_keys=True) + "\n")
    return 0


def cmd_measure(args, out):
    spec = measures.UMeasureSpec(args.kind, args.u, Fraction(args.q), args.L, args.tol)
    if args.lam is not None:
        r = measures.u_prob(spec, args.lam)
        v, err = r.value()
        out.write(json.dumps({"kind": spec.kind, "u": spec.u, "q": str(spec.q), "lambda": list(r.lam),
                              "prefactor": str(r.aut_prefactor), "value": v, "error_bound": err,
                              "forms_agree": r.agree}, sort_keys=True) + "\n")
        return 0
    if args.sample:
        draws = measures.sample(spec, args.seed, args.sample)
        for i, lam in enumerate(draws):
            out.write(json.dumps({"draw": i, "lambda": list(lam)}) + "\n")
        summary = {"summary": True, "draws": len(draws), "seed": args.seed}
    else:
        rows = measures.measure_rows(spec)
        for r in rows:
            out.write(json.dumps(r, sort_keys=True) + "\n")
        summary = {"summary": True, "rows": len(rows), "unassigned_mass": 1.0 - rows[-1]["cumprob"]}
    if not args.no_timestamp:
        summary["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    out.write(json.dumps(summary, sort_keys=True) + "\n")
    return 0


def cmd_verify(args, out):
    suites = SUITES if args.suite == "all" else [args.suite]
    cfg = {"tmax": args.tmax, "primes": args.primes, "L": args.L, "tol": args.tol}
    jobs = args.jobs or int(os.environ.get(ENV_JOBS, "1") or 1)
    records = []
    for s in suites:
        records += run_suite(s, cfg, jobs)
    summary = _summary(records, args, {"suites": list(suites)})
    _emit(records, summary, args.format, out)
    return 1 if summary["fail"] else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pairedhall", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key = value file mirroring the long flags")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        p.add_argument("--no-timestamp", action="store_true", help="omit the timestamp in summaries")

    p = sub.add_parser("hl", help="Hall-Littlewood P/Q (or skew) in the monomial basis")
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--mu", type=_partition_arg, help="skew by mu")
    p.add_argument("--n", type=int, help="number of variables")
    p.add_argument("--kind", choices=("P", "Q"), default="P")
    p.add_argument("--tsub", type=_tsub_arg, help="substitute t -> c*t^k, given as c,k")
    p.add_argument("--method", choices=("branching", "definition"), default="branching")
    common(p)

    p = sub.add_parser("hall", help="symbolic structure constants")
    p.add_argument("--kind", choices=hallconst.KINDS, default="classical")
    p.add_argument("--mu", type=_partition_arg, required=True)
    p.add_argument("--nu", type=_partition_arg, required=True)
    p.add_argument("--tmax", type=int, help="refuse weights above this bound")
    common(p)

    p = sub.add_parser("enumerate", help="brute-force submodule counts")
    p.add_argument("--kind", choices=hallconst.KINDS, default="classical")
    p.add_argument("--lambda", dest="lam", type=_partition_arg, required=True)
    p.add_argument("--mu", type=_partition_arg, required=True)
    p.add_argument("--nu", type=_partition_arg, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--size-bound", type=int, default=modlat.DEFAULT_SIZE_BOUND)
    common(p)

    p = sub.add_parser("measure", help="u-probability tables, single values and samples")
    p.add_argument("--kind", choices=("nopairing", "classical", "alternating", "hermitian"), default="nopairing")
    p.add_argument("--u", type=int, default=0)
    p.add_argument("--q", default="2")
    p.add_argument("--L", type=int, default=14)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--lambda", dest="lam", type=_partition_arg, help="report P(lambda) in closed form")
    p.add_argument("--sample", type=int, default=0, help="number of draws")
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.add_argument("--tmax", type=int, help="weight bound for the suite")
    p.add_argument("--primes", type=_int_list)
    p.add_argument("--L", type=int, help="truncation box size")
    p.add_argument("--tol", type=float)
    p.add_argument("--jobs", type=int, help=f"worker processes (default ${ENV_JOBS} or 1)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common(p)
    return ap


COMMANDS = {"hl": cmd_hl, "hall": cmd_hall, "enumerate": cmd_enumerate, "measure": cmd_measure,
            "verify": cmd_verify}


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        sub = ap._subparsers._group_actions[0].choices[args.command]
        _apply_config(args, sub)
        _validate_primes(getattr(args, "primes", None))
        if getattr(args, "tol", None) is not None and args.tol <= 0:
            raise UsageError("tolerance must be positive")
        buf = io.StringIO()
        code = COMMANDS[args.command](args, buf)
    except (UsageError, ValueError, hallconst.BoundExceeded, modlat.SizeBound) as e:
        print(f"pairedhall: error: {e}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
