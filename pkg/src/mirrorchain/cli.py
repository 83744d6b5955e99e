"""Command-line front end.

    mirrorchain chain build --family hahn --n 6 --p 0 --q 1 --out h6.json
    mirrorchain chain spectrum --chain h6.json
    mirrorchain verify --chain h6.json --suite all --time auto
    mirrorchain fidelity --chain h6.json --t 0:10:0.01 --out curve.csv
    mirrorchain perm --random --n 5 --seed 7 --simulate

Exit status: 0 when every check passes, 1 when a certificate fails,
2 on invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import chains, equivalences, many_body, permutations, polynomials, single_particle
from .chains import CUSTOM, HAHN, KRAWTCHOUK, ChainSpec

# mirror period quoted for the half-strength Krawtchouk couplings J_l / 2
KRAWTCHOUK_NOMINAL_PERIOD = math.pi
RNG_NAME = "numpy.random.default_rng (PCG64)"


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad number list {text!r}") from exc


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def parse_time_grid(text: str) -> np.ndarray:
    """``start:stop:step`` -> inclusive grid ``start, start+step, ..., stop``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"time grid must look like start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(x) for x in parts)
    except ValueError as exc:
        raise UsageError(f"time grid must look like start:stop:step, got {text!r}") from exc
    if not step > 0 or stop < start or not all(map(math.isfinite, (start, stop, step))):
        raise UsageError("time grid needs step > 0 and stop >= start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def _write(text: str, out: str):
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _write_json(obj, out: str):
    _write(json.dumps(obj, indent=2) + "\n", out)


def load_chain(path: str) -> ChainSpec:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"chain file {path} not found")
    return ChainSpec.from_json(p.read_text(encoding="utf-8"))


def resolve_mirror_time(spec: ChainSpec, time_arg: str, t_max: float, grid: int):
    """``auto`` -> predicted period for Hahn, numerical search otherwise."""
    if time_arg != "auto":
        try:
            t = float(time_arg)
        except ValueError as exc:
            raise UsageError(f"--time must be 'auto' or a number, got {time_arg!r}") from exc
        return t, single_particle.mirror_report_at(spec, t), "given"
    if spec.family.kind == HAHN:
        t = spec.predicted_period
        return t, single_particle.mirror_report_at(spec, t), "predicted"
    rep = single_particle.find_mirror_time(spec, t_max=t_max, grid=grid)
    return rep.mirror_time, rep, "searched"


# -- chain ---------------------------------------------------------------------

def cmd_build(args) -> int:
    if args.family == KRAWTCHOUK:
        if args.n is None:
            raise UsageError("--n is required")
        spec = chains.krawtchouk_chain(args.n)
    elif args.family == HAHN:
        if args.n is None:
            raise UsageError("--n is required")
        spec = chains.hahn_chain(args.n, args.p, args.q)
    else:
        if args.couplings is None or args.fields is None:
            raise UsageError("custom chains need --couplings and --fields")
        spec = chains.custom_chain(_floats(args.couplings), _floats(args.fields))
    _write(spec.to_json(indent=2) + "\n", args.out)
    return 0


def cmd_spectrum(args) -> int:
    spec = load_chain(args.chain)
    es = single_particle.numeric_eigensystem(spec)
    report = {
        "n_sites": spec.n_sites,
        "family": spec.family.to_dict(),
        "energies": es.energies.tolist(),
        "mirror_symmetric": spec.is_mirror_symmetric,
        "predicted_period": spec.predicted_period,
    }
    if spec.family.kind == HAHN:
        table = polynomials.analytic_eigensystem(spec)
        report["predicted_energies"] = table.energies.tolist()
    if spec.family.kind == KRAWTCHOUK:
        report["nominal_period_half_couplings"] = KRAWTCHOUK_NOMINAL_PERIOD
    if args.table:
        if spec.family.kind == CUSTOM:
            raise UsageError("closed-form tables exist only for krawtchouk and hahn chains")
        table = polynomials.analytic_eigensystem(spec)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "l", "phi"])
        for k, row in enumerate(table.values):
            for ell, v in enumerate(row):
                w.writerow([k, ell, f"{v:.17g}"])
        _write(buf.getvalue(), args.table)
    _write_json(report, args.out)
    return 0


# -- verify --------------------------------------------------------------------

def _suite_mirror(spec, args) -> dict:
    t, rep, how = resolve_mirror_time(spec, args.time, args.t_max, args.grid)
    out = {"time_source": how, "single_particle": rep.to_dict(),
           "predicted_period": spec.predicted_period}
    if spec.family.kind == KRAWTCHOUK:
        out["nominal_period_half_couplings"] = KRAWTCHOUK_NOMINAL_PERIOD
    if spec.n_sites > many_body.MAX_MIRROR_SITES:
        raise UsageError(f"full-register mirror check limited to {many_body.MAX_MIRROR_SITES} sites")
    cert = many_body.mirror_check(spec, t)
    out["certificate"] = cert.to_dict()
    out["pass"] = bool(rep.found and cert.passed)
    return out


def _suite_sectors(spec, args) -> dict:
    if spec.n_sites > 10:
        raise UsageError("sector consistency limited to 10 sites")
    rng = np.random.default_rng(args.seed)
    times = rng.uniform(0.0, 2 * math.pi, size=args.samples)
    gap = many_body.sector_consistency(spec, times)
    H = many_body.full_register_hamiltonian(spec)
    cross = many_body.cross_sector_max(H)
    return {"times": times.tolist(), "seed": args.seed, "rng": RNG_NAME,
            "max_difference": gap, "cross_sector_max": cross,
            "pass": bool(gap <= 1e-8 and cross == 0.0)}


def _suite_equiv(spec, args) -> dict:
    kind = spec.family.kind
    if kind == KRAWTCHOUK:
        rep = equivalences.verify_krawtchouk_spin_equivalence(spec.N)
        return {"kind": "spin_x", "applicable": True, **rep.to_dict()}
    if kind == HAHN and abs(spec.family.q) == 1 and spec.N % 2 == 1 and spec.alpha > 0:
        S = spec.N / 2
        rep = equivalences.verify_hahn_ls_equivalence(S + spec.alpha, S)
        return {"kind": "ls_coupling", "applicable": True, "L": S + spec.alpha, "S": S,
                **rep.to_dict()}
    return {"applicable": False, "pass": True,
            "reason": "no angular-momentum identification for this chain"}


SUITES = {"mirror": _suite_mirror, "sectors": _suite_sectors, "equiv": _suite_equiv}


def cmd_verify(args) -> int:
    spec = load_chain(args.chain)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = {name: SUITES[name](spec, args) for name in names}
    ok = all(r["pass"] for r in results.values())
    _write_json({"chain": args.chain, "suites": results, "pass": ok}, args.out)
    return 0 if ok else 1


# -- fidelity ------------------------------------------------------------------

def cmd_fidelity(args) -> int:
    spec = load_chain(args.chain)
    times = parse_time_grid(args.t)
    fid = single_particle.fidelity_curve(spec, times)
    buf = io.StringIO()
    buf.write("t,fidelity\n")
    for t, f in zip(times, fid):
        buf.write(f"{t:.12g},{f:.12g}\n")
    _write(buf.getvalue(), args.out)
    return 0


# -- perm ----------------------------------------------------------------------

def cmd_perm(args) -> int:
    meta = {}
    if args.random:
        if args.n is None:
            raise UsageError("--random needs --n")
        target = permutations.random_permutation(args.n + 1, args.seed)
        meta = {"seed": args.seed, "rng": RNG_NAME}
    elif args.target:
        target = permutations.SitePermutation.from_arrangement(_ints(args.target))
    else:
        raise UsageError("give --target or --random")
    plan = permutations.plan_reversals(target)
    out = {"target_arrangement": list(target.arrangement), "mapping": list(target.mapping),
           "plan": plan.to_dict(), "algorithm": "selection by reversal", **meta}
    code = 0
    if args.simulate:
        N = target.n_sites - 1
        if target.n_sites > permutations.MAX_PLAN_SITES:
            out["simulation"] = {"skipped": f"more than {permutations.MAX_PLAN_SITES} sites"}
        else:
            ver = permutations.simulate_plan(N, plan, args.family, args.p, args.q)
            out["simulation"] = ver.to_dict()
            code = 0 if ver.passed else 1
    _write_json(out, args.out)
    return code


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mirrorchain", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    chain = sub.add_parser("chain", help="build or inspect chains")
    chain_sub = chain.add_subparsers(dest="chain_command", required=True)
    b = chain_sub.add_parser("build", help="write a chain JSON file")
    b.add_argument("--family", choices=[KRAWTCHOUK, HAHN, CUSTOM], required=True)
    b.add_argument("--n", type=int, help="index of the last site (N)")
    b.add_argument("--p", type=int, default=0)
    b.add_argument("--q", type=int, default=1)
    b.add_argument("--couplings", help="comma list, custom chains")
    b.add_argument("--fields", help="comma list, custom chains")
    b.add_argument("--out", default="-")
    b.set_defaults(func=cmd_build)

    s = chain_sub.add_parser("spectrum", help="eigenvalues and closed-form tables")
    s.add_argument("--chain", required=True)
    s.add_argument("--table", help="CSV path for the closed-form eigenfunction table")
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_spectrum)

    v = sub.add_parser("verify", help="run certification suites")
    v.add_argument("--chain", required=True)
    v.add_argument("--suite", choices=["mirror", "sectors", "equiv", "all"], default="all")
    v.add_argument("--time", default="auto")
    v.add_argument("--t-max", type=float, default=10.0)
    v.add_argument("--grid", type=int, default=10_000)
    v.add_argument("--samples", type=int, default=5)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", default="-")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fidelity", help="end-to-end transfer fidelity curve as CSV")
    f.add_argument("--chain", required=True)
    f.add_argument("--t", required=True, help="start:stop:step")
    f.add_argument("--out", default="-")
    f.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("perm", help="plan (and simulate) a permutation by segment mirrors")
    p.add_argument("--target", help="final arrangement, e.g. 2,0,1")
    p.add_argument("--random", action="store_true")
    p.add_argument("--n", type=int, help="index of the last site for --random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--simulate", action="store_true")
    p.add_argument("--family", choices=[KRAWTCHOUK, HAHN], default=KRAWTCHOUK)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_perm)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, RuntimeError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"mirrorchain: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
