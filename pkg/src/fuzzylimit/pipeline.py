"""From a Lie algebra to a naive classical limit: the five-step inverse pipeline.

1. build the matrix-model action for each N in ``k_list``;
2. solve it (or load user representations) and validate the solutions;
3. build the Kirillov-Kostant algebra with its Casimir relation and the maps q'_N;
4. check the kernel chain ``ker q'_N ⊋ ker q'_J`` for ``N < J`` and assemble the diagram;
5. report the vertex algebra of the resulting cone.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .limits import ConeDescriptor, check_cone
from .matrix_model import ModelConfig, eom_residual, solve_matrix_model, perturb
from .poisson import PoissonStructure, StructureConstants, poisson_bracket
from .polynomial import Polynomial
from .quantize import QuantizationMap, defect, truncation_degree
from .reps import RepSet, hbar_for_k, validate_repset
from .span import kernel_chain_check, kernel_dim_closed_form

STAGES = ("1-actions", "2-representations", "3-quantization", "4-kernel-chain", "5-limit")


@dataclass
class PipelineReport:
    stages: list[dict] = field(default_factory=list)
    vertex: dict | None = None

    @property
    def passed(self) -> bool:
        return len(self.stages) == len(STAGES) and all(s["verdict"] == "pass" for s in self.stages)

    @property
    def failed_stage(self) -> str | None:
        return next((s["stage"] for s in self.stages if s["verdict"] != "pass"), None)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "failed_stage": self.failed_stage,
                "stages": self.stages, "vertex": self.vertex}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, default=to_jsonable)


def to_jsonable(o):
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, np.ndarray):
        return to_jsonable(o.tolist()) if o.dtype.kind == "c" else o.tolist()
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, list):
        return [to_jsonable(x) for x in o]
    raise TypeError(f"not serializable: {type(o)}")


def _su2_convention(s: StructureConstants) -> str | None:
    for conv in ("i", "real"):
        if s == StructureConstants.su2(conv):
            return conv
    return None


def casimir_polynomial(s: StructureConstants, ginv: np.ndarray) -> Polynomial:
    """``C = g^{mu nu} x_mu x_nu``."""
    xs = Polynomial.variables(s.dim)
    return sum((ginv[m, n] * xs[m] * xs[n] for m in range(s.dim) for n in range(s.dim)),
               Polynomial.zero(s.dim))


def inverse_pipeline(s: StructureConstants, k_list, options: dict | None = None) -> PipelineReport:
    """Run the five stages; a failing stage ends the run with a tagged diagnostic.

    options: ``reps`` ({N: RepSet}, replaces solving), ``degree`` (kernel-chain bound,
    default ``max(k_list)``), ``tol`` (1e-8), ``solver`` (opts for the solver),
    ``penalty_weight`` (1.0), ``perturbation`` (relative noise on the initial data, 0),
    ``seed`` (0).
    """
    o = {"reps": None, "degree": None, "tol": 1e-8, "solver": None, "penalty_weight": 1.0,
         "perturbation": 0.0, "seed": 0}
    o.update(options or {})
    k_list = sorted(int(k) for k in k_list)
    tol = float(o["tol"])
    report = PipelineReport()
    conv = _su2_convention(s)
    user_reps = o["reps"] or {}

    def stage(i, verdict, **details):
        report.stages.append({"stage": STAGES[i], "verdict": verdict, **details})
        return verdict == "pass"

    # 1. actions -------------------------------------------------------------
    if not k_list:
        stage(0, "fail", diagnostic="empty k_list")
        return report
    try:
        cfgs = {}
        for N in k_list:
            h = user_reps[N].hbar.real if N in user_reps else hbar_for_k(N)
            cfgs[N] = ModelConfig(N, h, s, o["penalty_weight"], [0.5])
    except ValueError as e:
        stage(0, "fail", diagnostic=str(e))
        return report
    g = cfgs[k_list[0]].killing
    stage(0, "pass", killing=g, killing_condition=cfgs[k_list[0]].killing_condition,
          hbar={N: c.hbar for N, c in cfgs.items()})

    # 2. representations ------------------------------------------------------
    rng = np.random.default_rng(o["seed"])
    reps, rows, bad = {}, [], []
    for N in k_list:
        cfg = cfgs[N]
        if N in user_reps:
            X, source = user_reps[N].generators, "loaded"
        elif conv is not None:
            X, source = RepSet.su2(N, cfg.hbar, conv).generators, "solved"
        else:
            stage(1, "fail", diagnostic=f"N={N}: no representation supplied and the structure "
                                        "constants are not su(2)")
            return report
        if source == "solved":
            # the Casimir target is the value carried by the unperturbed initial data
            cfg.casimir_targets = [float(np.trace(sum(cfg.ginv[m, n] * X[m] @ X[n]
                                                      for m in range(s.dim)
                                                      for n in range(s.dim))).real / N)]
            if o["perturbation"]:
                X = perturb(X, rng, o["perturbation"])
            res = solve_matrix_model(cfg, X, o["solver"] or {"tol": tol})
            X = res.X
        rep = RepSet(X, cfg.hbar, s, label=f"N={N}")
        dev = validate_repset(rep)
        eom = eom_residual(X, cfg)
        rows.append({"N": N, "source": source, "rep_deviation": dev, "eom_residual": eom})
        if dev > tol or eom > tol:
            bad.append(N)
        reps[N] = rep
    if bad:
        stage(1, "fail", table=rows,
              diagnostic=f"representation check failed for N={bad} (validate_repset / EOM "
                         f"residual above {tol:g})")
        return report
    stage(1, "pass", table=rows)

    # 3. Poisson algebra and quantization maps ---------------------------------
    ginv = cfgs[k_list[0]].ginv
    kk = PoissonStructure.kirillov_kostant(s)
    C = casimir_polynomial(s, ginv)
    closure = max(poisson_bracket(C, x, kk).norm() for x in Polynomial.variables(s.dim))
    nus = {N: float(np.trace(sum(ginv[m, n] * reps[N].generators[m] @ reps[N].generators[n]
                                 for m in range(s.dim) for n in range(s.dim))).real / N)
           for N in k_list}
    nu = nus[k_list[0]]
    iso = np.allclose(ginv, ginv[0, 0] * np.eye(s.dim)) and s.dim == 3
    if closure > tol or not all(abs(v - nu) <= tol for v in nus.values()):
        stage(2, "fail", casimir_closure=closure, casimir_values=nus,
              diagnostic="Casimir relation is not central or differs between N")
        return report
    qmaps = {}
    for N in k_list:
        r = reps[N]
        n_mu = truncation_degree(r.generators)
        if iso:
            # quotient by g^{mu nu} x_mu x_nu = nu, i.e. x.x = nu / G_00
            qmaps[N] = QuantizationMap("sphere", kk, r.hbar, r.generators, n_mu,
                                       bracket_factor=1.0, radius_sq=nu / ginv[0, 0])
        else:
            qmaps[N] = QuantizationMap("lie", kk, r.hbar, r.generators, n_mu, bracket_factor=1.0)
    xs = Polynomial.variables(s.dim)
    lin = {N: max((float(np.linalg.norm(defect(xs[i], xs[j], q)))
                   for i in range(s.dim) for j in range(i + 1, s.dim)), default=0.0)
           for N, q in qmaps.items()}
    relation = {N: float(np.linalg.norm(q(C) - nu * q.identity())) for N, q in qmaps.items()}
    ok = max(lin.values()) <= tol and max(relation.values()) <= tol
    if not stage(2, "pass" if ok else "fail", casimir_closure=closure, nu=nu,
                 truncation={N: q.truncation_degree for N, q in qmaps.items()},
                 linear_defect=lin, relation_defect=relation,
                 **({} if ok else {"diagnostic": "q'_N violates the linear bracket or the relation"})):
        return report

    # 4. kernel chain and diagram ----------------------------------------------
    d = o["degree"] if o["degree"] is not None else max(k_list)
    if iso:
        chain_ok, table = kernel_chain_check(k_list, d, [qmaps[N] for N in k_list])
        if conv is not None:
            for row in table:
                row["closed_form"] = kernel_dim_closed_form(row["k"], d)
            chain_ok &= all(r["dimension"] == r["closed_form"] for r in table)
    else:
        chain_ok, table = True, []
    if not stage(3, "pass" if chain_ok else "fail", degree=d, table=table,
                 diagram={"objects": k_list, "morphisms": []},
                 **({} if chain_ok else {"diagnostic": "kernel chain is not strictly decreasing"})):
        return report

    # 5. naive classical limit ---------------------------------------------------
    legs = [qmaps[N] for N in k_list]
    cone = ConeDescriptor(kk, legs, [])
    cone_ok, cone_dev = check_cone(cone, xs)
    vertex = {"algebra": "Kirillov-Kostant", "structure_constants": s.to_dict(),
              "relation": "g^{mu nu} x_mu x_nu = nu" if iso else None,
              "nu": nu if iso else None}
    stage(4, "pass" if cone_ok else "fail", cone_deviation=cone_dev,
          legs=[{"N": N, "hbar": qmaps[N].hbar, "linear_defect": lin[N]} for N in k_list])
    report.vertex = vertex
    return report
