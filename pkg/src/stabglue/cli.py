"""Command-line front end.

Subcommands: verify-kernel, hn, glue, tilt, scan, path.  Exit code 0 when
all invoked checks pass, 1 on a check failure (the report carries a
replayable witness), 2 on configuration errors.  A JSON report is always
written; scan and path also emit a CSV.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from fractions import Fraction

from .scalars import QS3, XC, parse_qs3
from .stability import CentralCharge, ModuleHeart, StabilityCondition, module_charge
from .report import make_report, write_csv, write_report

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class ConfigError(Exception):
    pass


def parse_charge(text: str, n: int) -> CentralCharge:
    """Parse a charge literal: comma-separated "re|im" entries, one per
    simple, each part a rational or a + b√3 literal (ASCII r3 accepted)."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise ConfigError(f"charge needs {n} entries, got {len(parts)}")
    row = []
    for p in parts:
        if "|" not in p:
            raise ConfigError(f"charge entry {p!r} must look like re|im")
        re_s, im_s = p.split("|", 1)
        row.append(XC(parse_qs3(re_s), parse_qs3(im_s)))
    return CentralCharge(tuple(row))


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational {text!r}: {exc}") from exc


def _load_config(args) -> dict:
    cfg = {}
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    return cfg


def _out_path(args, default: str) -> str:
    return getattr(args, "out", None) or default


THETAS = {
    "pi/6": math.pi / 6,
    "pi/2": math.pi / 2,
    "2pi/3": 2 * math.pi / 3,
    "5pi/6": 5 * math.pi / 6,
}


def cmd_verify_kernel(args) -> int:
    from .geometry import (
        ratio_sup_bound,
        ratio_sup_oracle,
        ratio_sup_true,
        sample_angle_sum,
    )

    t0 = time.time()
    results = {"thetas": {}}
    ok = True
    for name, theta in THETAS.items():
        violations, min_margin, max_ratio = sample_angle_sum(
            theta, args.samples, args.seed
        )
        bound = ratio_sup_bound(theta)
        oracle = ratio_sup_oracle(theta)
        true_sup = ratio_sup_true(theta)
        entry = {
            "violations": violations,
            "min_margin": min_margin,
            "empirical_sup_ratio": max_ratio,
            "sup_bound": bound,
            "sup_oracle": oracle,
            "sup_closed_form": true_sup,
            "empirical_below_bound": max_ratio <= bound + 1e-12,
            "oracle_matches_closed_form": abs(oracle - true_sup) <= 1e-9,
        }
        if violations or not entry["empirical_below_bound"] or not entry[
            "oracle_matches_closed_form"
        ]:
            ok = False
        results["thetas"][name] = entry
    # exact equality witness at |z1| = |z2|, theta = phi = pi/2
    from .geometry import check_angle_sum_inequality
    from .scalars import angle_pi

    eq = check_angle_sum_inequality(XC(0, 1), XC(1, 0), angle_pi(Fraction(1, 2)))
    results["equality_witness"] = {
        "holds": eq.holds,
        "equality": eq.equality,
        "exact": eq.exact,
    }
    ok = ok and eq.holds and eq.equality
    results["ok"] = ok
    report = make_report(
        "verify-kernel",
        {"samples": args.samples, "seed": args.seed},
        results,
        {"total": time.time() - t0},
    )
    write_report(_out_path(args, "report.json"), report)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_hn(args) -> int:
    from .dcat import parse_dobject

    t0 = time.time()
    n = args.n
    Z = parse_charge(args.charge, n)
    heart = ModuleHeart(n, 0, corpus_dim=args.corpus_dim)
    sigma = StabilityCondition(heart, Z)
    obj = parse_dobject(n, args.object)
    filtration = sigma.hn(obj)
    results = {
        "object": str(obj),
        "semistable": filtration.semistable,
        "factors": [
            {
                "class": list(f.k0),
                "phase": float(f.phase),
                "charge": str(f.phase.z),
            }
            for f in filtration.factors
        ],
        "mass": filtration.mass(),
        "ok": True,
    }
    report = make_report(
        "hn",
        {"n": n, "charge": args.charge, "object": args.object},
        results,
        {"total": time.time() - t0},
    )
    write_report(_out_path(args, "report.json"), report)
    return EXIT_OK


def _context(args):
    from .gluing import standard_context
    from .morphisms import SODSide

    side = SODSide.SOD0 if args.side == 0 else SODSide.SOD1
    Z = parse_charge(args.charge, args.n)
    return standard_context(side, args.n, Z)


def cmd_glue(args) -> int:
    from .gluing import (
        check_conditions,
        cor72_ratio_le_one,
        glue_stability,
        glued_phase_equality_check,
        mass_additivity_check,
        prop_truncation_semistable,
    )
    from .family import glued_sup_ratio

    t0 = time.time()
    ctx = _context(args)
    conds = check_conditions(ctx)
    results = {"conditions": conds}
    ok = conds["all"]
    if ok:
        sigma = glue_stability(ctx, corpus_dim=args.corpus_dim)
        results["flags"] = sigma.flags()
        heart = sigma.heart
        sweep = {"semistables": 0, "failures": []}
        for E in heart.corpus():
            if heart.is_zero(E) or not sigma.is_semistable_heart(E):
                continue
            sweep["semistables"] += 1
            tr = prop_truncation_semistable(E, ctx)
            pe = glued_phase_equality_check(E, ctx)
            if not (tr["t1_semistable"] and tr["t2_semistable"]):
                sweep["failures"].append(["truncation", str(E)])
            if pe["vacuous"] is False and not pe["equal"]:
                sweep["failures"].append(["phase-equality", str(E)])
            if not mass_additivity_check(E, ctx):
                sweep["failures"].append(["mass-additivity", str(E)])
            if not cor72_ratio_le_one(E, ctx):
                sweep["failures"].append(["ratio-bound", str(E)])
        sweep["sup_ratio"] = glued_sup_ratio(ctx, sigma)
        results["semistable_sweep"] = sweep
        ok = ok and not sweep["failures"] and sweep["sup_ratio"] <= 1.0 + 1e-12
    results["ok"] = ok
    report = make_report(
        "glue",
        {"side": args.side, "n": args.n, "charge": args.charge},
        results,
        {"total": time.time() - t0},
    )
    write_report(_out_path(args, "report.json"), report)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_tilt(args) -> int:
    from .geometry import plane_point
    from .gluing import GluedHeart
    from .tilting import (
        TiltTag,
        build_sigma_tilde,
        tilt_class_simple,
        validate_sigma_tilde,
    )

    t0 = time.time()
    beta = parse_fraction(args.beta)
    omega = parse_fraction(args.omega)
    if omega < 0 or (omega == 0 and not (beta == 1)):
        raise ConfigError("omega must be positive (or the point (1,0))")
    ctx = _context(args)
    p = plane_point(beta, omega)
    sigma = build_sigma_tilde(p, ctx, corpus_dim=args.corpus_dim, validate=False)
    if p.interior:
        validation = validate_sigma_tilde(sigma)
        tag = TiltTag(p, ctx)
        glued = GluedHeart(ctx, args.corpus_dim)
        table = []
        for E in glued.corpus():
            table.append([str(E), tilt_class_simple(E, tag, glued)])
        results = {
            "point": [str(beta), str(omega)],
            "validation": validation,
            "classification": table,
            "flags": sigma.flags(),
            "ok": validation["ok"],
        }
    else:
        results = {
            "point": [str(beta), str(omega)],
            "specializes_to_glued": True,
            "flags": sigma.flags(),
            "ok": True,
        }
    report = make_report(
        "tilt",
        {
            "beta": args.beta,
            "omega": args.omega,
            "side": args.side,
            "n": args.n,
            "charge": args.charge,
        },
        results,
        {"total": time.time() - t0},
    )
    write_report(_out_path(args, "report.json"), report)
    return EXIT_OK if results["ok"] else EXIT_CHECK_FAILED


def _scan_point(payload):
    from .family import sup_ratio_estimate
    from .geometry import RegionParams, plane_point, region_membership
    from .tilting import build_sigma_tilde, validate_sigma_tilde

    side, n, charge_text, bs, os_, e1s, e2s = payload
    args_ns = argparse.Namespace(side=side, n=n, charge=charge_text)
    ctx = _context(args_ns)
    beta, omega = Fraction(bs), Fraction(os_)
    p = plane_point(beta, omega)
    rp = RegionParams(Fraction(e1s), Fraction(e2s))
    rep = region_membership(p, rp)
    inr = rep.in_h_plus and rep.in_h_minus
    row = {
        "beta": float(beta),
        "omega": float(omega),
        "in_region": inr,
        "sup_ratio": None,
        "heart_ok": None,
        "ball_ok": None,
    }
    if inr:
        try:
            sigma = build_sigma_tilde(p, ctx, validate=False)
            val = validate_sigma_tilde(sigma)
            row["heart_ok"] = val["ok"]
            sample = sup_ratio_estimate(sigma, ctx)
            row["sup_ratio"] = sample.sup_ratio
            row["ball_ok"] = True
        except Exception as exc:  # diagnostic rows, not crashes
            row["heart_ok"] = False
            row["error"] = str(exc)
    return row


def cmd_scan(args) -> int:
    from .family import chain_connect
    from .geometry import plane_point

    t0 = time.time()
    try:
        gx, gy = (int(v) for v in args.grid.lower().split("x"))
    except ValueError:
        raise ConfigError(f"bad grid spec {args.grid!r}")
    eps1 = parse_fraction(args.eps1)
    eps2 = parse_fraction(args.eps2)
    b_lo, b_hi = Fraction(-3, 2), Fraction(3, 2)
    w_lo, w_hi = Fraction(0), Fraction(3, 2)
    payloads = []
    for j in range(gy):
        omega = w_lo + (w_hi - w_lo) * Fraction(j + 1, gy)
        for i in range(gx):
            beta = b_lo + (b_hi - b_lo) * Fraction(i, max(gx - 1, 1))
            payloads.append(
                (args.side, args.n, args.charge, str(beta), str(omega), str(eps1), str(eps2))
            )
    workers = int(os.environ.get("STABGLUE_WORKERS", "1"))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_scan_point, payloads))
    else:
        rows = [_scan_point(p) for p in payloads]
    # adjacency inside each grid row, certified through chained balls
    ctx = _context(args)
    eps = Fraction(1, 16)
    idx = 0
    ok = True
    sigma_cache: dict = {}
    for j in range(gy):
        prev = None
        for i in range(gx):
            row = rows[idx]
            if row["in_region"] and row["heart_ok"]:
                if prev is not None:
                    link = chain_connect(
                        plane_point(Fraction(payloads[prev][3]), Fraction(payloads[prev][4])),
                        plane_point(Fraction(payloads[idx][3]), Fraction(payloads[idx][4])),
                        eps,
                        ctx,
                        _cache=sigma_cache,
                    )
                    row["ball_ok"] = link["ok"]
                prev = idx
            if row["in_region"] and (row["heart_ok"] is False or row["ball_ok"] is False):
                ok = False
            idx += 1
    csv_rows = [
        [
            r["beta"],
            r["omega"],
            int(r["in_region"]),
            r["sup_ratio"] if r["sup_ratio"] is not None else "",
            "" if r["heart_ok"] is None else int(bool(r["heart_ok"])),
            "" if r["ball_ok"] is None else int(bool(r["ball_ok"])),
        ]
        for r in rows
    ]
    write_csv(
        args.csv or "grid.csv",
        ["beta", "omega", "in_region", "sup_ratio", "heart_ok", "ball_ok"],
        csv_rows,
    )
    in_region = [r for r in rows if r["in_region"]]
    results = {
        "points": len(rows),
        "in_region": len(in_region),
        "heart_ok_all": all(r["heart_ok"] for r in in_region),
        "ball_ok_all": all(r["ball_ok"] is not False for r in in_region),
        "sup_ratio_max": max((r["sup_ratio"] or 0.0) for r in rows) if rows else 0.0,
        "ok": ok,
    }
    report = make_report(
        "scan",
        {
            "grid": args.grid,
            "eps1": args.eps1,
            "eps2": args.eps2,
            "side": args.side,
            "n": args.n,
            "charge": args.charge,
        },
        results,
        {"total": time.time() - t0},
    )
    write_report(_out_path(args, "report.json"), report)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_path(args) -> int:
    from .family import heart_window_check, path_points, run_path_chain
    from .gluing import standard_context
    from .morphisms import SODSide, mor_corpus

    t0 = time.time()
    eps = parse_fraction(args.eps)
    Z = parse_charge(args.charge, args.n)
    ctx0 = standard_context(SODSide.SOD0, args.n, Z)
    ctx1 = standard_context(SODSide.SOD1, args.n, Z)
    chain = run_path_chain(ctx0, ctx1, steps=args.steps, eps=eps)
    corpus = list(mor_corpus(args.n, 1, (0,)))
    mid = path_points(args.steps)[args.steps // 2]
    windows = heart_window_check(ctx0, ctx1, mid.point, corpus)
    ok = chain["ok"] and windows["ok"]
    results = {
        "chain": {k: v for k, v in chain.items() if k != "links"},
        "links_ok": all(l["ok"] for l in chain["links"]),
        "links": chain["links"],
        "endpoint_rotation": chain["rotation"],
        "heart_windows_mid": {k: windows[k] for k in ("ok", "counts")},
        "ok": ok,
    }
    csv_rows = []
    for q in path_points(args.steps):
        csv_rows.append(
            [
                float(q.point.beta),
                float(q.point.omega),
                int(q.in_region),
                "",
                "",
                "",
            ]
        )
    write_csv(
        args.csv or "path.csv",
        ["beta", "omega", "in_region", "sup_ratio", "heart_ok", "ball_ok"],
        csv_rows,
    )
    report = make_report(
        "path",
        {"steps": args.steps, "eps": args.eps, "n": args.n, "charge": args.charge},
        results,
        {"total": time.time() - t0},
    )
    write_report(_out_path(args, "report.json"), report)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="stabglue",
        description="exact verification of glued and tilted stability conditions",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, with_model=True):
        p.add_argument("--out", help="JSON report path (default report.json)")
        p.add_argument("--config", help="JSON config file with defaults")
        if with_model:
            p.add_argument("--n", type=int, default=1, help="A_n quiver size of the base category")
            p.add_argument(
                "--charge",
                default="0|1",
                help="base charge literal, e.g. '0|1' for Z(k)=i or '-1|1,0|1'",
            )
            p.add_argument("--side", type=int, choices=(0, 1), default=0)
            p.add_argument("--corpus-dim", type=int, default=2, dest="corpus_dim")

    p = sub.add_parser("verify-kernel", help="randomized and exact kernel inequality checks")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=7)
    common(p, with_model=False)
    p.set_defaults(fn=cmd_verify_kernel)

    p = sub.add_parser("hn", help="Harder-Narasimhan dump for one object")
    common(p)
    p.add_argument("--object", required=True, help="object literal, e.g. 'I[1,1]@0 + I[1,2]@1'")
    p.set_defaults(fn=cmd_hn, corpus_dim_default=6)

    p = sub.add_parser("glue", help="gluing conditions and glued stability validation")
    common(p)
    p.set_defaults(fn=cmd_glue)

    p = sub.add_parser("tilt", help="build and validate the family member at (beta, omega)")
    common(p)
    p.add_argument("--beta", required=True)
    p.add_argument("--omega", required=True)
    p.set_defaults(fn=cmd_tilt)

    p = sub.add_parser("scan", help="grid sweep over the admissible region")
    common(p)
    p.add_argument("--eps1", default="1/3")
    p.add_argument("--eps2", default="-1/2")
    p.add_argument("--grid", default="32x32")
    p.add_argument("--csv", help="CSV output path (default grid.csv)")
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("path", help="certify the chain between the two pullback stabilities")
    common(p)
    p.add_argument("--steps", type=int, default=64)
    p.add_argument("--eps", default="1/16")
    p.add_argument("--csv", help="CSV output path (default path.csv)")
    p.set_defaults(fn=cmd_path)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # check machinery raised a diagnostic
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
