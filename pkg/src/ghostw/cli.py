"""Command-line harness.

    ghostw build --n 2
    ghostw compute ghost --n 1
    ghostw verify isomorphism --n 2 --max-degree 4 --out report.json

Exit status: 0 if every assertion passed, 1 if any failed, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from dataclasses import dataclass, field

from .centers import solver_for
from .hc import harish_chandra
from .osp import build_osp
from .suites import (
    hc_suite,
    modules_suite,
    pbw_suite,
    pinczon_suite,
    structure_suite,
    isomorphism_suite,
)
from .whittaker import model_for

SCHEMA = "ghostw-report/1"
CHECKS = ("grading", "pbw", "hc", "pinczon", "isomorphism", "modules")
COMPUTE = ("center", "anticenter", "ghost", "casimir", "finite-w")
# older spelling of the isomorphism suite, still accepted on the command line
ALIASES = {"theorem-a": "isomorphism"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    target: str | None
    n: int
    max_degree: int
    seed: int = 0
    out: str | None = None
    checks: list[str] = field(default_factory=list)

    def validate(self) -> None:
        if self.n < 1:
            raise UsageError(f"--n must be a positive integer (got {self.n})")
        if self.max_degree < 0:
            raise UsageError(f"--max-degree must be non-negative (got {self.max_degree})")
        bad = [c for c in self.checks if c not in CHECKS]
        if bad:
            raise UsageError(f"unknown checks: {', '.join(bad)}")

    def to_json(self) -> dict:
        return {"command": self.command, "target": self.target, "n": self.n,
                "max_degree": self.max_degree, "seed": self.seed, "checks": self.checks}


def default_degree(n: int) -> int:
    # covers T (degree 2n) and G = q1(T u_{alpha_n}); see the README on the degree bound
    return max(4, 2 * n)


def thread_cap() -> int:
    raw = os.environ.get("GHOSTW_THREADS")
    if raw is None:
        return 1
    try:
        k = int(raw)
    except ValueError:
        raise UsageError(f"GHOSTW_THREADS must be a positive integer (got {raw!r})") from None
    if k < 1:
        raise UsageError(f"GHOSTW_THREADS must be a positive integer (got {raw!r})")
    return k


# -- commands ------------------------------------------------------------------

def _run_checks(cfg: RunConfig) -> tuple[dict, bool, list[str]]:
    alg = build_osp(cfg.n)
    d = cfg.max_degree
    suites: dict[str, dict] = {}
    lines = []
    ok_all = True
    for name in cfg.checks:
        # a fresh generator per suite keeps each suite reproducible on its own
        rng = random.Random(f"{cfg.seed}:{name}:{cfg.n}")
        t0 = time.perf_counter()
        extra = None
        if name == "grading":
            res = structure_suite(alg, rng)
        elif name == "pbw":
            res = pbw_suite(alg, rng)
        elif name == "hc":
            res = hc_suite(alg, d)
        elif name == "pinczon":
            res = pinczon_suite(alg)
        elif name == "isomorphism":
            res, extra = isomorphism_suite(alg, d)
        else:
            res = modules_suite(alg, rng)
        ok = all(r["status"] != "fail" for r in res)
        ok_all &= ok
        entry = {"status": "pass" if ok else "fail", "assertions": res}
        if extra is not None:
            entry["dimensions"] = extra
        suites[name] = entry
        lines.append(f"{name:10s} {'PASS' if ok else 'FAIL'}  ({len(res)} assertions, {time.perf_counter() - t0:.2f}s)")
        for r in res:
            if r["status"] == "fail":
                lines.append(f"    failed: {r['name']}")
    return {"suites": suites}, ok_all, lines


def _compute(cfg: RunConfig) -> tuple[dict, bool, list[str]]:
    alg = build_osp(cfg.n)
    S = solver_for(alg)
    U = S.uea
    d = cfg.max_degree
    t = cfg.target
    lines = []
    if t in ("center", "anticenter"):
        basis = S.compute_center(d) if t == "center" else S.compute_anticenter(d)
        res = basis.to_json()
        res["filtered_dimensions"] = basis.filtered_dimensions()
        res["harish_chandra"] = [harish_chandra(e).to_json() for e in basis.elements]
        lines.append(f"{t} of U(osp(1|{cfg.n})) up to degree {d}: dimension {basis.dimension}")
        lines.append(f"filtered dimensions: {basis.filtered_dimensions()}")
        for e in basis.elements:
            lines.append(f"  [deg {e.degree}] sigma.eta = {harish_chandra(e)}")
    elif t == "ghost":
        T = S.casimir_ghost()
        hc = harish_chandra(T)
        res = {"T": T.to_json(), "degree": T.degree, "harish_chandra": hc.to_json()}
        lines.append(f"T = {U.format(T)}")
        lines.append(f"sigma.eta(T) = {hc}")
    elif t == "casimir":
        C, Q = S.casimir(), S.casimir_even()
        res = {"C": C.to_json(), "C_even": Q.to_json(),
               "harish_chandra": {"C": harish_chandra(C).to_json(), "C_even": harish_chandra(Q).to_json()}}
        lines.append(f"C = {U.format(C)}")
        lines.append(f"sigma.eta(C) = {harish_chandra(C)}")
        lines.append(f"C_even = {U.format(Q)}")
    else:
        W = model_for(alg)
        basis = W.finite_w_basis(d)
        res = {"degree": d, "dimension": len(basis),
               "basis": [{"parity": v.parity, "degree": v.degree, "vector": v.to_json(),
                          "miura": W.miura(v).to_json()} for v in basis]}
        lines.append(f"ad(n)-invariants of the Whittaker model up to degree {d}: dimension {len(basis)}")
        for v in basis:
            lines.append(f"  [{'odd' if v.parity else 'even'}, deg {v.degree}] mu = {W.miura(v)}")
    return {"result": res}, True, lines


def _build(cfg: RunConfig) -> tuple[dict, bool, list[str]]:
    alg = build_osp(cfg.n)
    data = alg.to_json()
    data["good_grading"] = {k: str(v) for k, v in alg.good_grading().items()}
    data["f_prin"] = str(alg.f_prin)
    lines = [f"osp(1|{2 * cfg.n}): dimension {alg.dim}, basis {' '.join(alg.labels)}", f"f_prin = {alg.f_prin}"]
    return {"algebra": data}, True, lines


def run(cfg: RunConfig) -> tuple[int, dict, list[str]]:
    cfg.validate()
    thread_cap()
    if cfg.command == "build":
        body, ok, lines = _build(cfg)
    elif cfg.command == "compute":
        body, ok, lines = _compute(cfg)
    else:
        body, ok, lines = _run_checks(cfg)
    report = {"schema": SCHEMA, "config": cfg.to_json(), "status": "pass" if ok else "fail"}
    report.update(body)
    return (0 if ok else 1), report, lines


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- argument parsing --------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1, help="rank n of osp(1|2n) (default 1)")
    common.add_argument("--max-degree", type=int, default=None, help="PBW degree bound (default max(4, 2n))")
    common.add_argument("--out", default=None, help="write the JSON report here")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="ghostw", description="Ghost center and finite W-algebra of osp(1|2n), exactly.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="construct the algebra and print its tables")
    c = sub.add_parser("compute", parents=[common], help="run one solver")
    c.add_argument("target", choices=COMPUTE)
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("target", choices=CHECKS + ("all",) + tuple(ALIASES))
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    target = getattr(args, "target", None)
    target = ALIASES.get(target, target)
    checks = []
    if args.command == "verify":
        checks = list(CHECKS) if target == "all" else [target]
    cfg = RunConfig(
        command=args.command,
        target=target,
        n=args.n,
        max_degree=args.max_degree if args.max_degree is not None else default_degree(max(args.n, 1)),
        seed=args.seed,
        out=args.out,
        checks=checks,
    )
    try:
        code, report, lines = run(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ghostw: error: {exc}", file=sys.stderr)
        return 2
    text = dumps(report)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.json:
        sys.stdout.write(text)
    else:
        for line in lines:
            print(line)
        print(f"overall: {report['status'].upper()}")
    return code


if __name__ == "__main__":
    sys.exit(main())
