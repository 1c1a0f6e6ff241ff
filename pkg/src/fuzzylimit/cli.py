"""Command-line driver: scans and reports for the fuzzy sphere, fuzzy torus, Moyal products,
defect scaling, the matrix model and the inverse pipeline.

Exit codes: 0 when every verdict passes, 1 when one fails, 2 on bad arguments or config.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .limits import ConeDescriptor, check_cone, scaling_exponent
from .matrix_model import (ModelConfig, classify_solution, perturb, solve_matrix_model,
                           su2_solution)
from .moyal import (MoyalQuantization, MoyalSpec, associator_norm, intertwiner,
                    intertwiner_defect)
from .pipeline import to_jsonable, inverse_pipeline
from .poisson import StructureConstants, levi_civita
from .polynomial import Polynomial, TorusFunction, monomials_upto
from .quantize import defect, sphere_qmap, torus_qmap
from .reps import (RepSet, clock_shift, commutator, fuzzy_sphere_generators, hbar_for_k,
                   su2_irrep, torus_generator, torus_prefactor)
from .span import generated_algebra_dim, kernel_dim, kernel_dim_closed_form, table_to_csv

OK = ("pass", "exact")


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"2..6"``, ``"2-6"``, ``"2,3,5"`` or ``"4"``."""
    try:
        if ".." in text or (text.count("-") == 1 and not text.startswith("-")):
            lo, hi = text.replace("..", "-").split("-")
            ks = list(range(int(lo), int(hi) + 1))
        else:
            ks = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as e:
        raise UsageError(f"bad range {text!r}") from e
    if not ks:
        raise UsageError(f"empty range {text!r}")
    return ks


def load_config(text: str | None) -> dict:
    if not text:
        return {}
    try:
        raw = text if text.lstrip().startswith("{") else Path(text).read_text()
        cfg = json.loads(raw)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read config: {e}") from e
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    return cfg


# subcommands -------------------------------------------------------------
def cmd_fuzzy_sphere(args) -> dict:
    rows = []
    eps = levi_civita(3)
    for k in parse_range(args.k):
        if k < 2:
            raise UsageError("fuzzy sphere needs k >= 2")
        J = su2_irrep(k)
        comm = max(np.linalg.norm(commutator(J[a], J[b])
                                  - 1j * sum(eps[a, b, c] * J[c] for c in range(3)))
                   for a in range(3) for b in range(3))
        cas = np.linalg.norm(sum(j @ j for j in J) - (k * k - 1) / 4 * np.eye(k))
        x1, x2, _ = Polynomial.variables(3)
        lin = np.linalg.norm(defect(x1, x2, sphere_qmap(k)))
        alg = generated_algebra_dim(fuzzy_sphere_generators(k), 2 * (k - 1))
        kd = kernel_dim(k, args.degree)
        ok = (max(comm, cas) <= 1e-10 and lin <= 1e-12 and alg == k * k
              and kd == kernel_dim_closed_form(k, args.degree))
        rows.append({"k": k, "hbar": hbar_for_k(k), "hbar_sq": hbar_for_k(k) ** 2,
                     "commutator_dev": comm, "casimir_dev": cas, "linear_defect": lin,
                     "algebra_dim": alg, "kernel_dim": kd, "degree": args.degree,
                     "verdict": "pass" if ok else "fail"})
    return {"command": "fuzzy-sphere", "rows": rows}


def cmd_fuzzy_torus(args) -> dict:
    rows = []
    for k in parse_range(args.k):
        if k < 1:
            raise UsageError("fuzzy torus needs k >= 1")
        U, V, q = clock_shift(k)
        I = np.eye(k)
        powers = max(np.abs(np.linalg.matrix_power(U, k) - I).max(),
                     np.abs(np.linalg.matrix_power(V, k) - I).max())
        braid = np.abs(V @ U - q * U @ V).max()
        idx = [(a, b) for a in range(k) for b in range(k)]
        Y = {l: torus_generator(k, *l) for l in idx}
        ident = max(np.abs(commutator(Y[l], Y[m]) - torus_prefactor(k, l, m)
                           * torus_generator(k, l[0] + m[0], l[1] + m[1])).max()
                    for l in idx for m in idx)
        alg = generated_algebra_dim([U, V], max(2 * (k - 1), 1))
        ok = max(powers, braid, ident) <= 1e-12 and alg == k * k
        rows.append({"k": k, "hbar_tor": 2.0 / k, "power_dev": powers, "braid_dev": braid,
                     "commutator_identity_dev": ident, "algebra_dim": alg,
                     "verdict": "pass" if ok else "fail"})
    return {"command": "fuzzy-torus", "rows": rows}


def _unit(p: Polynomial) -> Polynomial:
    return p / p.norm() if p else p


def cmd_moyal(args) -> dict:
    cfg = {"n_specs": 10, "n_triples": 100, "n_pairs": 100, "degree": 4,
           "p_values": [0.5, 1.0, 2.0], "tol": 1e-10}
    cfg.update(load_config(args.config))
    rng = np.random.default_rng(args.seed)
    d, tol = int(cfg["degree"]), float(cfg["tol"])
    per_spec = max(1, int(cfg["n_triples"]) // int(cfg["n_specs"]))
    assoc = []
    for _ in range(int(cfg["n_specs"])):
        spec = MoyalSpec(np.asarray((rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
                                    / np.sqrt(2)), np.exp(2j * np.pi * rng.random()))
        worst = max(associator_norm(*(_unit(Polynomial.random(2, d, rng)) for _ in range(3)),
                                    spec) for _ in range(per_spec))
        assoc.append(worst)
    inter = []
    for _ in range(int(cfg["n_pairs"])):
        spec = MoyalSpec(np.asarray((rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
                                    / np.sqrt(2)), np.exp(2j * np.pi * rng.random()))
        inter.append(intertwiner_defect(_unit(Polynomial.random(2, d, rng)),
                                        _unit(Polynomial.random(2, d, rng)), spec))
    legs = [MoyalQuantization(MoyalSpec.star_p(p)) for p in cfg["p_values"]]
    cone = ConeDescriptor(None, legs, [(i, j, intertwiner(legs[i].spec, legs[j].spec))
                                       for i in range(len(legs)) for j in range(len(legs))])
    cone_ok, cone_dev = check_cone(cone, [Polynomial.monomial(e) for e in monomials_upto(2, 4)])
    rows = [{"check": "associativity", "max_deviation": max(assoc),
             "verdict": "pass" if max(assoc) <= tol else "fail"},
            {"check": "intertwiner", "max_deviation": max(inter),
             "verdict": "pass" if max(inter) <= tol else "fail"},
            {"check": "star_p_cone", "max_deviation": cone_dev,
             "verdict": "pass" if cone_ok else "fail"}]
    return {"command": "moyal", "config": cfg, "rows": rows}


_PAIRS = {
    "linear": lambda x: (x[0], x[1]),
    "quadratic": lambda x: (x[0] * x[1], x[1] * x[2]),
    "quadratic-diag": lambda x: (x[0] * x[0], x[1] * x[1]),
    "quadratic-mixed": lambda x: (x[0] * x[1], x[0] * x[0] - x[1] * x[1]),
    "cubic": lambda x: (x[0] * x[1] * x[2], x[0] * x[0] * x[1]),
}


def cmd_defect_scan(args) -> dict:
    ks = parse_range(args.k)
    if args.family == "torus":
        f, g = TorusFunction.mode(1, 0), TorusFunction.mode(0, 1)
        rep = scaling_exponent(f, g, torus_qmap, ks, norm=args.norm, name="torus")
    else:
        if args.pair not in _PAIRS:
            raise UsageError(f"unknown pair {args.pair!r}; choose from {sorted(_PAIRS)}")
        if min(ks) < 2:
            raise UsageError("fuzzy sphere needs k >= 2")
        f, g = _PAIRS[args.pair](Polynomial.variables(3))
        rep = scaling_exponent(f, g, sphere_qmap, ks, norm=args.norm, name="sphere")
    out = rep.to_dict()
    out["command"] = "defect-scan"
    return out


def cmd_matrix_model(args) -> dict:
    cfg = {"convention": "i", "perturbation": 0.01, "penalty_weight": 1.0,
           "max_iter": 10000, "tol": 1e-8, "target": 1e-6}
    cfg.update(load_config(args.config))
    rng = np.random.default_rng(args.seed)
    rows, traces = [], {}
    for N in parse_range(args.k or "3..6"):
        if N < 2:
            raise UsageError("matrix model needs N >= 2")
        mc = ModelConfig.su2(N, convention=cfg["convention"],
                             penalty_weight=float(cfg["penalty_weight"]))
        X0 = perturb(su2_solution(mc), rng, float(cfg["perturbation"]))
        res = solve_matrix_model(mc, X0, {"max_iter": int(cfg["max_iter"]),
                                          "tol": float(cfg["tol"])})
        cls = classify_solution(res.X, mc)
        traces[N] = res.trace_csv()
        rows.append({"N": N, "hbar": mc.hbar, "iterations": res.iterations,
                     "converged": res.converged, "eom_residual": res.eom_residual,
                     "casimir_deviation": res.casimir_deviation, "grad_norm": res.grad_norm,
                     "classification": cls["kind"], "rep_deviation": cls["rep_deviation"],
                     "verdict": "pass" if res.eom_residual <= float(cfg["target"]) else "fail"})
    if args.trace:
        Path(args.trace).write_text("".join(f"# N={N}\n{t}" for N, t in traces.items()))
    return {"command": "matrix-model", "config": cfg, "rows": rows}


def cmd_pipeline(args) -> dict:
    cfg = {"convention": "i", "k_list": [2, 3, 4, 5]}
    cfg.update(load_config(args.config))
    if args.k:
        cfg["k_list"] = parse_range(args.k)
    if "structure" in cfg:
        try:
            s = StructureConstants.from_dict(cfg["structure"])
        except (KeyError, ValueError) as e:
            raise UsageError(f"bad structure constants: {e}") from e
    else:
        s = StructureConstants.su2(cfg["convention"])
    reps = {int(N): RepSet.load(p) for N, p in cfg.get("reps", {}).items()}
    opts = {"reps": reps, "seed": args.seed}
    if args.degree is not None:
        opts["degree"] = args.degree
    for key in ("tol", "perturbation", "penalty_weight"):
        if key in cfg:
            opts[key] = cfg[key]
    report = inverse_pipeline(s, cfg["k_list"], opts).to_dict()
    report["command"] = "pipeline"
    report["rows"] = [{"stage": st["stage"], "verdict": st["verdict"]} for st in report["stages"]]
    return report


COMMANDS = {"fuzzy-sphere": cmd_fuzzy_sphere, "fuzzy-torus": cmd_fuzzy_torus, "moyal": cmd_moyal,
            "defect-scan": cmd_defect_scan, "matrix-model": cmd_matrix_model,
            "pipeline": cmd_pipeline}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fuzzylimit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, k_default=None):
        sp.add_argument("--k", default=k_default, help="range like 2..6 or list 2,3,5")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--csv", action="store_true", help="emit the row table as CSV")
        sp.add_argument("--out", help="write to this file instead of stdout")
        sp.add_argument("--config", help="JSON file or inline JSON object")
        return sp

    common(sub.add_parser("fuzzy-sphere", help="hbar, Casimir, defect, span and kernel table"),
           "2..6").add_argument("--degree", type=int, default=3)
    common(sub.add_parser("fuzzy-torus", help="clock/shift identities and span table"), "1..8")
    common(sub.add_parser("moyal", help="associativity, intertwiner and *_p cone checks"))
    sp = common(sub.add_parser("defect-scan", help="log-log defect scaling fit"), "4..40")
    sp.add_argument("--family", choices=("sphere", "torus"), default="sphere")
    sp.add_argument("--pair", default="quadratic", help=f"sphere pair: {', '.join(_PAIRS)}")
    sp.add_argument("--norm", choices=("fro", "normalized", "op"), default="fro")
    sp = common(sub.add_parser("matrix-model", help="solve from perturbed su(2) data"), "3..6")
    sp.add_argument("--trace", help="write solver traces (CSV) to this file")
    common(sub.add_parser("pipeline", help="Lie algebra to classical-limit report"), None) \
        .add_argument("--degree", type=int, default=None)
    return p


def _verdicts(report: dict) -> list[str]:
    if "verdict" in report:
        return [report["verdict"]]
    if report.get("command") == "pipeline":
        return ["pass" if report["passed"] else "fail"]
    return [r["verdict"] for r in report.get("rows", [])]


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.csv:
        text = table_to_csv(report.get("rows", []))
    else:
        text = json.dumps(report, indent=1, default=to_jsonable)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0 if all(v in OK for v in _verdicts(report)) else 1


if __name__ == "__main__":
    sys.exit(main())
