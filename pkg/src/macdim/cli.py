"""Command-line front end.

    macdim verify   [--model si1,si3] [--degree D] [--checks annihilation,virasoro]
    macdim avg      --model si1 --lambda 2,1
    macdim series   --model si5 --degree 2
    macdim numeric  --model si3 --N 2 --q 0.3 --beta 2 [--params u1=1.0] [--lambda 1]
    macdim selftest

JSON is the machine format; --format text renders the same report for reading.
Exit code is 0 iff no record has status "fail".
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from . import __version__
from .errors import MacdimError
from .partitions import format_partition, parse_partition
from .scalars import GENERATORS

CHECKS = ("annihilation", "virasoro", "conjugation", "universal", "dualpair", "identities", "limits")
DEFAULT_DEGREE = 6
DEFAULT_DEGREE_SI10 = 4


def _max_degree() -> int:
    return int(os.environ.get("MACDIM_MAX_DEGREE", DEFAULT_DEGREE))


def _model_ids(text: str | None) -> list[str]:
    from .models import MODEL_IDS
    if not text or text.lower() == "all":
        return list(MODEL_IDS)
    out = []
    for m in text.split(","):
        mid = m.strip().upper().replace(".", "")
        if mid not in MODEL_IDS:
            raise MacdimError(f"unknown model {m!r}; expected one of {', '.join(MODEL_IDS)}")
        out.append(mid)
    return out


def _record(check: str, model: str | None, degrees, ok, detail=None) -> dict:
    status = "skipped" if ok is None else ("pass" if ok else "fail")
    return {"check": check, "model": model, "degree_range": degrees, "status": status, "detail": detail}


# ---------------------------------------------------------------------------
# verify


def _model_records(mid: str, D: int, checks: set[str]) -> list[dict]:
    from . import models as M
    from .fockops import proportionality
    from .orthopoly import build_dual_pair, duality_check

    out = []
    dc = min(D, 4)
    if "annihilation" in checks:
        bad = M.annihilation_check(mid, D)
        top = M.recursion_operator(mid, "explicit", D).safe_output_degree()
        out.append(_record("annihilation", mid, [0, top], bad is None,
                           None if bad is None else {"output": format_partition(bad[0]), "coefficient": str(bad[1])}))
    if "virasoro" in checks:
        for rec in M.virasoro_check(mid, D):
            ok = None if rec["skipped"] else rec["ok"]
            out.append(_record(f"virasoro.m={rec['m']}", mid, [0, rec["max_degree"]], ok,
                               None if rec["residual"] is None else
                               {"output": format_partition(rec["residual"][0]), "coefficient": rec["residual"][1]}))
    if "conjugation" in checks:
        if mid == "SI7":
            res = M.si7_check(dc)
            out.append(_record("conjugation.two-operator", mid, [0, dc], res["decomposition"] and res["G1_equals_F1"], res))
        elif mid == "SI10":
            c = M.si10_check(min(D, 3))
            out.append(_record("conjugation.factorized", mid, [0, min(D, 3)], c is not None,
                               None if c is None else {"factor": str(c)}))
        elif mid in ("SI8", "SI9"):
            out.append(_record("conjugation", mid, None, None, "no single conjugation; covered by the limits check"))
        else:
            c = M.conjugation_check(mid, dc)
            out.append(_record("conjugation", mid, [0, dc], c is not None,
                               {"gauge": M.PROOF_GAUGE[mid], "factor": None if c is None else str(c)}))
    if "universal" in checks:
        c = proportionality(M.recursion_universal(mid, dc), M.recursion_operator(mid, "explicit", dc), dc)
        out.append(_record("universal-vs-explicit", mid, [0, dc], c is not None, None if c is None else {"factor": str(c)}))
    if "dualpair" in checks:
        bad = duality_check(build_dual_pair(mid, dc))
        out.append(_record("dual-pair", mid, [0, dc], bad is None,
                           None if bad is None else {"mu": format_partition(bad[0]), "lambda": format_partition(bad[1]),
                                                     "value": str(bad[2])}))
    return out


def _global_records(D: int, checks: set[str]) -> list[dict]:
    from .identities import operator_identity_suite
    from .models import limit_checks

    out = []
    dc = min(D, 4)
    if "identities" in checks:
        for rec in operator_identity_suite(dc):
            out.append({"check": f"identity: {rec['identity']}", "model": None, "degree_range": rec["degree_range"],
                        "status": rec["status"], "detail": rec["first_failing"]})
    if "limits" in checks:
        for rec in limit_checks(dc):
            out.append(_record(f"limit: {rec['check']}", None, [0, dc], rec["ok"], {"factor": rec["factor"]}))
    return out


def cmd_verify(models: list[str], degree: int | None, checks: set[str]) -> dict:
    records = []
    for mid in models:
        D = degree if degree is not None else (DEFAULT_DEGREE_SI10 if mid == "SI10" else DEFAULT_DEGREE)
        records += _model_records(mid, D, checks)
    records += _global_records(degree if degree is not None else DEFAULT_DEGREE, checks)
    return {"suite": "verify", "records": records}


# ---------------------------------------------------------------------------
# averages, series, numerics


def cmd_avg(mid: str, lam) -> dict:
    from .macdonald import build_macdonald
    from .models import average, get_model
    from .scalars import ONE
    from .symfunc import evaluate

    m = get_model(mid)
    C = m.C_eigen(lam) if lam else ONE
    P = evaluate(build_macdonald(sum(lam)).P[lam], m.phi) if lam else ONE
    return {"suite": "avg", "model": mid, "lambda": format_partition(lam),
            "C": str(C), "P_at_phi": str(P), "average": str(average(m, lam)), "records": []}


def cmd_series(mid: str, degree: int) -> dict:
    from .models import generating_function
    Z = generating_function(mid, degree)
    coeffs = {format_partition(mu): str(c) for mu, c in sorted(Z.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))}
    return {"suite": "series", "model": mid, "degree": degree, "basis": "p", "coefficients": coeffs, "records": []}


def cmd_numeric(cfg, lams, tol: float = 1e-8) -> dict:
    from .numerics import compare
    rows, records = [], []
    for lam in lams:
        row = compare(cfg, lam)
        rows.append(row)
        ok = row["relerr"] <= tol and row["tailbound"] <= 1e-10
        records.append(_record(f"numeric.{format_partition(lam)}", cfg.model, None, ok,
                               {"relerr": row["relerr"], "tailbound": row["tailbound"]}))
    return {"suite": "numeric", "rows": rows, "records": records}


def cmd_selftest() -> dict:
    from .selftest import run
    return {"suite": "selftest", "records": run()}


# ---------------------------------------------------------------------------
# rendering


def _render_text(report: dict) -> str:
    lines = [f"macdim {report['version']}  suite={report['suite']}  {report['timing']:.2f}s"]
    for key in ("model", "lambda", "C", "P_at_phi", "average", "degree"):
        if key in report:
            lines.append(f"{key}: {report[key]}")
    for mu, c in report.get("coefficients", {}).items():
        lines.append(f"  p[{mu}]: {c}")
    for row in report.get("rows", []):
        lines.append(f"  lambda={format_partition(tuple(row['lambda']))} numeric={row['numeric']:.15g} "
                     f"symbolic={row['symbolic']:.15g} relerr={row['relerr']:.2e} tail={row['tailbound']:.2e}")
    for rec in report["records"]:
        model = f"[{rec['model']}] " if rec["model"] else ""
        lines.append(f"{rec['status'].upper():7s} {model}{rec['check']}")
    n_fail = sum(r["status"] == "fail" for r in report["records"])
    if report["records"]:
        lines.append(f"{len(report['records'])} records, {n_fail} failed")
    return "\n".join(lines) + "\n"


def _render_csv(report: dict) -> str:
    buf = io.StringIO()
    fields = ["model", "N", "q", "beta", "params", "lambda", "numeric", "symbolic", "relerr", "tailbound"]
    w = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for row in report["rows"]:
        w.writerow({**row, "params": json.dumps(row["params"], sort_keys=True),
                    "lambda": format_partition(tuple(row["lambda"]))})
    return buf.getvalue()


# ---------------------------------------------------------------------------
# argument parsing


def _params(items) -> dict:
    out = {}
    for item in items or []:
        for kv in item.split(","):
            if "=" not in kv:
                raise MacdimError(f"--params expects k=v, got {kv!r}")
            k, v = kv.split("=", 1)
            out[k.strip()] = float(v)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="macdim", description="Exact checks for q,t-deformed matrix models.")
    p.add_argument("--version", action="version", version=f"macdim {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the report to FILE as well as stdout")
        sp.add_argument("--format", choices=["json", "text"], default="json")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--model", default="all")
    v.add_argument("--degree", type=int)
    v.add_argument("--checks", default=",".join(CHECKS))
    common(v)

    a = sub.add_parser("avg", help="closed-form average <P_lambda>")
    a.add_argument("--model", required=True)
    a.add_argument("--lambda", dest="lam", required=True)
    common(a)

    s = sub.add_parser("series", help="generating function coefficients in the p-basis")
    s.add_argument("--model", required=True)
    s.add_argument("--degree", type=int, default=4)
    common(s)

    n = sub.add_parser("numeric", help="Jackson-sum oracle against the closed formula")
    n.add_argument("--model", required=True)
    n.add_argument("--N", type=int, default=1)
    n.add_argument("--q", type=float, default=0.3)
    n.add_argument("--beta", type=int, default=1)
    n.add_argument("--params", action="append", help="k=v, e.g. u1=1.0 (repeatable or comma separated)")
    n.add_argument("--lambda", dest="lam", action="append", help="partition; repeatable (default 1, 2 and 1,1)")
    n.add_argument("--out")
    n.add_argument("--format", choices=["json", "text", "csv"], default="json")

    t = sub.add_parser("selftest", help="randomized property checks of the core layers")
    common(t)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cap = _max_degree()
    if getattr(args, "degree", None) is not None and not 0 <= args.degree <= cap:
        parser.error(f"--degree must lie in 0..{cap} (MACDIM_MAX_DEGREE)")
    start = time.perf_counter()
    try:
        if args.cmd == "verify":
            checks = {c.strip() for c in args.checks.split(",") if c.strip()}
            unknown = checks - set(CHECKS)
            if unknown:
                parser.error(f"unknown checks {sorted(unknown)}; expected {', '.join(CHECKS)}")
            report = cmd_verify(_model_ids(args.model), args.degree, checks)
        elif args.cmd == "avg":
            report = cmd_avg(_model_ids(args.model)[0], parse_partition(args.lam))
        elif args.cmd == "series":
            report = cmd_series(_model_ids(args.model)[0], args.degree)
        elif args.cmd == "numeric":
            from .numerics import NumericModelConfig
            cfg = NumericModelConfig(args.model, args.N, args.q, args.beta, _params(args.params))
            lams = [parse_partition(x) for x in args.lam] if args.lam else [(1,), (2,), (1, 1)]
            report = cmd_numeric(cfg, lams)
        else:
            report = cmd_selftest()
    except (MacdimError, ValueError) as exc:
        print(f"macdim: error: {exc}", file=sys.stderr)
        return 2
    report.update({"version": __version__, "generators": list(GENERATORS),
                   "timing": round(time.perf_counter() - start, 3)})
    if args.format == "text":
        text = _render_text(report)
    elif args.format == "csv":
        text = _render_csv(report)
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0 if all(r["status"] != "fail" for r in report["records"]) else 1


if __name__ == "__main__":
    sys.exit(main())
