"""Command-line entry point: ``nvalued <command> [flags]``.

Exit status: 0 when every check passes, 1 when a verification fails,
2 on bad flags or unmet preconditions.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import groupsim
from .arith import irreducible, primes, wendt
from .elimination import discriminant_identity_check
from .errors import NvaluedError, UsageError
from .pn_builders import (BLOCK_POWER_CONVENTION, Route, available_routes, build,
                          check_structure, output_vars)
from .polymatrix import composition_routes
from .polyring import Polynomial, format_poly, reduce_to_elementary

DEFAULT_SEED = 20240601


@dataclass
class RunConfig:
    command: str
    args: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    work_budget: int = primes.DEFAULT_RHO_BUDGET
    output_format: str = "json"


def threads() -> int:
    try:
        return max(1, int(os.environ.get("NVAL_THREADS", "1")))
    except ValueError:
        return 1


def emit(obj, fmt: str, text: str | None = None, out=None):
    out = out or sys.stdout
    if fmt == "text" and text is not None:
        out.write(text.rstrip("\n") + "\n")
    else:
        out.write(json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


# -- commands --------------------------------------------------------------
# Each returns (payload, text or None, ok).

def cmd_pn(cfg: RunConfig):
    a = cfg.args
    n, m = a["n"], a["m"]
    routes = available_routes(m) if a["route"] == "all" else [Route(a["route"])]
    results = {r.value: build(n, m, r) for r in routes}
    polys = list(results.values())
    agree = all(p == polys[0] for p in polys[1:])
    p = polys[0]
    structure = check_structure(p, n, m)
    payload = {"n": n, "m": m, "routes": [r.value for r in routes],
               "all_routes_agree": agree, "symmetric_homogeneous": structure,
               "block_power_convention": BLOCK_POWER_CONVENTION}
    if a["basis"] == "sigma":
        s = reduce_to_elementary(p, output_vars(m))
        payload["sigma"] = s.to_json()
        payload["sigma_text"] = str(s)
        body = str(s)
    else:
        payload["poly"] = p.convert(_out_table(m)).to_json()
        body = format_poly(p)
    text = f"p_{n}(z; {', '.join(output_vars(m)[1:])}) = {body}\nall-routes-agree={str(agree).lower()}"
    return payload, text, agree and structure


def _out_table(m: int):
    from .polyring import VarTable
    return VarTable(tuple(output_vars(m)))


def cmd_wendt(cfg: RunConfig):
    n = cfg.args["n"]
    if n < 1:
        raise UsageError("n must be positive")
    dm, dr = wendt.wendt_det_matrix(n), wendt.wendt_det_resultant(n)
    payload = {"n": n, "det_matrix": str(dm), "det_resultant": str(dr), "agree": dm == dr}
    return payload, f"det W_{n} = {dm}", dm == dr


def cmd_disc(cfg: RunConfig):
    rep = discriminant_identity_check(cfg.args["n"])
    j = rep.to_json()
    return j, f"n={rep.n} constant={rep.constant} expected_abs={rep.expected_abs} ok={rep.ok}", rep.ok


def _factor_job(job):
    key, c, budget, seed = job
    return key, primes.factorize(c, budget=budget, seed=seed)


def cmd_factor(cfg: RunConfig):
    n = cfg.args["n"]
    p = build(n, 2, Route.WENDT)
    s = reduce_to_elementary(p, output_vars(2))
    jobs = [(e, c, cfg.work_budget, cfg.seed) for e, c in s.items()]
    if threads() > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads()) as ex:
            done = list(ex.map(_factor_job, jobs))
    else:
        done = [_factor_job(j) for j in jobs]
    rows, lines = [], []
    ok = True
    for e, f in done:
        key = "(" + ",".join(str(v) for v in e) + ")"
        rows.append({"sigma_exp": list(e), "factored": str(f), "certified": f.certified,
                     "value": str(f.value())})
        lines.append(f"{key} -> {f}")
        ok = ok and f.certified and f.value() == s.coeffs[e]
    return {"n": n, "basis": "sigma", "rows": rows}, "\n".join(lines), ok


def cmd_divis(cfg: RunConfig):
    n = cfg.args["n"]
    wendt._require_prime_ge5(n)
    q = wendt.divisibility_quotient(n)
    coeffs = [c for _, c in q.items()]
    n4 = all(c % n ** 4 == 0 for c in coeffs)
    n5 = all(c % n ** 5 == 0 for c in coeffs)
    payload = {"n": n, "divisible_n4": n4, "divisible_n5": n5, "terms": len(coeffs)}
    return payload, f"n={n} n^4 | all: {n4}  n^5 | all: {n5}", n4


def _parse_poly_arg(text: str) -> list[int]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--poly is not valid JSON: {exc}") from exc
    if isinstance(obj, list):
        return [int(c) for c in obj]
    if isinstance(obj, dict):
        p = Polynomial.from_json(obj)
        used = p.variables()
        if len(used) > 1:
            raise UsageError("polynomial must be univariate")
        if not used:
            return [p.constant_value()]
        v = used.pop()
        parts = p.coeffs_in(v)
        return [parts[k].constant_value() if k in parts else 0 for k in range(max(parts) + 1)]
    raise UsageError("--poly must be a coefficient list or a polynomial object")


def cmd_irred(cfg: RunConfig):
    f = _parse_poly_arg(cfg.args["poly"])
    cert = irreducible.irreducibility_certificate(f, primes=cfg.args["primes"], seed=cfg.seed)
    j = cert.to_json()
    return j, f"{cert.status.value} (degree {cert.degree}, {cert.evidence.get('method')})", True


def cmd_assoc(cfg: RunConfig):
    a = cfg.args
    r = groupsim.assoc_campaign(a["n"], a["samples"], cfg.seed, radius=a["radius"])
    j = dict(r.to_json(), n=a["n"], seed=cfg.seed)
    return j, None, r.ok


def cmd_family(cfg: RunConfig):
    a = cfg.args
    r = groupsim.family_campaign(a["family"], a["samples"], cfg.seed)
    j = dict(r.to_json(), family=a["family"], seed=cfg.seed)
    return j, None, r.ok


def cmd_criterion(cfg: RunConfig):
    a = cfg.args
    if a["p"] is not None:
        if a["k"] is None:
            raise UsageError("--p needs --k")
        cases = [(a["p"], a["k"])]
    else:
        cases = wendt.criterion_cases(a["q_max"])
    results = [wendt.wendt_criterion(p, k) for p, k in cases]
    ok = all(r.consistent for r in results)
    text = "\n".join(f"p={r.p} k={r.k} q={r.q} divides={r.divides} witness={r.witness}"
                     for r in results)
    return {"cases": [r.to_json() for r in results], "all_consistent": ok}, text, ok


def cmd_compose(cfg: RunConfig):
    a = cfg.args
    rng = random.Random(cfg.seed)
    passed = failed = 0
    first_failure = None
    for _ in range(a["samples"]):
        f = [rng.randint(-5, 5) for _ in range(rng.randint(1, a["max_degree"]))] + [1]
        g = [rng.randint(-5, 5) for _ in range(rng.randint(1, a["max_degree"]))] + [1]
        r = composition_routes(f, g)
        vals = list(r.values())
        if all(v == vals[0] for v in vals[1:]):
            passed += 1
        else:
            failed += 1
            first_failure = first_failure or {"f": f, "g": g}
    j = {"passed": passed, "failed": failed, "seed": cfg.seed, "first_failure": first_failure}
    return j, None, failed == 0


COMMANDS = {
    "pn": cmd_pn, "wendt": cmd_wendt, "disc-check": cmd_disc, "factor-coeffs": cmd_factor,
    "divis": cmd_divis, "irred": cmd_irred, "assoc": cmd_assoc, "family-check": cmd_family,
    "wendt-criterion": cmd_criterion, "compose-check": cmd_compose,
}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--budget", type=int, default=primes.DEFAULT_RHO_BUDGET,
                        help="Pollard-rho iterations per composite")
    common.add_argument("--out", choices=["json", "text"], default="json")

    ap = argparse.ArgumentParser(prog="nvalued", description="p_n builders and checks")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pn", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--route", default="all", choices=["all"] + [r.value for r in Route])
    p.add_argument("--basis", default="raw", choices=["raw", "sigma"])

    for name in ("wendt", "disc-check", "divis"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("factor-coeffs", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--basis", default="sigma", choices=["sigma"])

    s = sub.add_parser("irred", parents=[common])
    s.add_argument("--poly", required=True,
                   help='coefficients lowest first, e.g. "[1,0,-10,0,1]", or polynomial JSON')
    s.add_argument("--primes", type=int, default=20)

    s = sub.add_parser("assoc", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--radius", type=float, default=10.0)

    s = sub.add_parser("family-check", parents=[common])
    s.add_argument("--family", choices=[f.value for f in groupsim.Family], required=True)
    s.add_argument("--samples", type=int, default=200)

    s = sub.add_parser("wendt-criterion", parents=[common])
    s.add_argument("--p", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--q-max", type=int, default=200)

    s = sub.add_parser("compose-check", parents=[common])
    s.add_argument("--samples", type=int, default=50)
    s.add_argument("--max-degree", type=int, default=4)
    return ap


def run(cfg: RunConfig, out=None) -> int:
    try:
        payload, text, ok = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        (out or sys.stderr).write(f"usage error: {exc}\n")
        return 2
    except NvaluedError as exc:
        emit({"command": cfg.command, "error": type(exc).__name__, "detail": str(exc),
              "ok": False}, "json", out=out)
        return 1
    payload = dict(payload, command=cfg.command, ok=ok)
    emit(payload, cfg.output_format, text, out)
    return 0 if ok else 1


def main(argv=None) -> int:
    ap = make_parser()
    ns = ap.parse_args(argv)
    args = {k: v for k, v in vars(ns).items() if k not in ("command", "seed", "budget", "out")}
    cfg = RunConfig(ns.command, args, ns.seed, ns.budget, ns.out)
    code = run(cfg)
    if code == 2:
        ap.print_usage(sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
