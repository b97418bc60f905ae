"""Command line harness: ``horokit verify <suite>`` and ``horokit eval <transform>``."""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from . import geometry as geo
from . import hardy as hd
from . import transforms as tr
from .suites import SUITES, ConfigInvalid, SuiteConfig, run_suite

CSV_COLUMNS = ("check", "anchor", "route_a", "route_b", "abs_diff", "rel_diff", "tol", "pass")
TRANSFORMS = ("packet", "radon", "cauchy", "abel", "inversion", "hardy-norm", "orbital")


def _config(path):
    return SuiteConfig.load(path) if path else SuiteConfig()


def config_hash(cfg: SuiteConfig):
    blob = json.dumps(asdict(cfg), sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def build_report(results, cfg: SuiteConfig):
    suites = {name: [c.record() for c in checks] for name, checks in results.items()}
    return {"version": __version__, "seed": cfg.seed, "config_hash": config_hash(cfg),
            "config": asdict(cfg), "suites": suites,
            "passed": all(r["pass"] for recs in suites.values() for r in recs)}


def write_csv(report, directory):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, recs in report["suites"].items():
        with open(directory / f"{name}.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_COLUMNS)
            for r in recs:
                w.writerow([r[k] if k != "pass" else int(r[k]) for k in CSV_COLUMNS])


def print_table(report, out=None):
    out = out or sys.stdout
    for name, recs in report["suites"].items():
        print(f"== {name}", file=out)
        for r in recs:
            flag = "PASS" if r["pass"] else "FAIL"
            rel = "-" if r["rel_diff"] is None else f"{r['rel_diff']:.2e}"
            print(f"  {flag}  {r['check']:<52s} a={_fmt(r['route_a'])} b={_fmt(r['route_b'])} "
                  f"rel={rel} tol={r['tol']:.1e}" + (f"  [{r['note']}]" if r["note"] else ""), file=out)


def _fmt(v):
    if isinstance(v, list):
        return f"{v[0]:.6g}{v[1]:+.6g}j"
    return f"{v:.6g}"


def cmd_verify(args):
    cfg = _config(args.config)
    report = build_report(run_suite(args.suite, cfg), cfg)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(json.dumps(report, indent=2))
    if args.csv:
        write_csv(report, args.csv)
    print_table(report)
    return 0 if report["passed"] else 1


def _enc(v):
    v = complex(v)
    return [v.real, v.imag]


def cmd_eval(args):
    cfg = _config(args.config)
    M = geo.RankOneModel(2)
    out = []
    for i, f in enumerate(cfg.wave_packets()):
        rec = {"packet": i}
        if args.transform == "packet":
            pts = cfg.grid("u", [1.0, 2.0, 0.5j])
            rec["values"] = [_enc(v) for v in f.at_u(np.asarray(pts, complex))]
        elif args.transform in ("radon", "cauchy"):
            zs = cfg.grid("xi_log", [[0.0, 0.0], [0.0, 0.5]])
            vals = []
            for z in zs:
                xi = geo.HoroParam(np.exp(complex(*z)) * M.xi_o)
                vals.append(_enc(tr.radon_spectral(f, xi) if args.transform == "radon"
                                 else tr.cauchy_transform(f, xi).value))
            rec["xi_log"], rec["values"] = zs, vals
        elif args.transform == "abel":
            s = cfg.grid("s", [0.0, 0.5, 1.0])
            rec["s"], rec["values"] = s, [float(v) for v in hd.abel_geometric(f, s).real]
        elif args.transform == "inversion":
            r = tr.invert(f)
            rec.update(f_y_o=_enc(r.f_y_o), route_a=_enc(r.route_a), route_b=_enc(r.route_b),
                       kappa=_enc(r.kappa))
        elif args.transform == "hardy-norm":
            G = hd.hardy_norm_geometric(f)
            rec.update(spectral=G.spectral, restricted=hd.restricted_norm(f), eps=list(G.eps),
                       geometric=list(G.values), extrapolated=G.extrapolated)
        elif args.transform == "orbital":
            s = cfg.grid("gutzmer_s", [0.2, 0.5, 0.9])
            rec["s"] = s
            rec["values"] = [float(v) for v in hd.OrbitalIntegral(f)(1j * np.pi * np.asarray(s)).real]
        out.append(rec)
    print(json.dumps({"transform": args.transform, "results": out}, indent=2))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="horokit", description="Horospherical transforms and Hardy-space checks.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--config")
    v.add_argument("--out")
    v.add_argument("--csv")
    v.set_defaults(func=cmd_verify)
    e = sub.add_parser("eval", help="evaluate one transform for the configured packets")
    e.add_argument("transform", choices=TRANSFORMS)
    e.add_argument("--config")
    e.set_defaults(func=cmd_eval)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args)
    except ConfigInvalid as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
