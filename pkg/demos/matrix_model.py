"""
Matrix model
============

The su(2) representations solve the equations of motion. Starting from a perturbed
representation, the solver finds its way back.
"""
import numpy as np

from fuzzylimit.matrix_model import (ModelConfig, action_value, classify_solution, eom_residual,
                                     perturb, solve_matrix_model, su2_solution)

for N in range(2, 7):
    cfg = ModelConfig.su2(N, penalty_weight=0.0)
    X = su2_solution(cfg)
    print(N, eom_residual(X, cfg), action_value(X, cfg).real, cfg.hbar ** 2 * N / 8)

rng = np.random.default_rng(1)
for N in range(3, 7):
    cfg = ModelConfig.su2(N)
    res = solve_matrix_model(cfg, perturb(su2_solution(cfg), rng, 0.01))
    kind = classify_solution(res.X, cfg)["kind"]
    print(f"N={N} iterations={res.iterations} residual={res.eom_residual:.1e} {kind}")

# the trace of the last run, every 10th line
lines = res.trace_csv().splitlines()
print("\n".join([lines[0]] + lines[1::10]))
