"""Matrix-model action with Killing-metric contractions, its equations of motion and a solver.

For ``X = (X_1, ..., X_d)`` write ``Y_mu = G_{mu a} X_a`` with ``G = g^{-1}`` the inverse
Killing metric. Then

    S = tr(1/4 [X_mu, X_nu][Y_mu, Y_nu] + hbar^2/2 Y_mu X_mu) + w sum_i |F_i|^2,

    E_nu = [Y_mu, [X_mu, X_nu]] - hbar^2 X_nu,         F = Y_mu X_mu - nu Id,

with a quadratic penalty of weight ``w`` on the Casimir relation ``F = 0``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .poisson import StructureConstants
from .reps import RepSet, check_matrix, commutator, validate_repset

#: Killing metrics with condition number above this are rejected as degenerate.
KILLING_COND_MAX = 1e12


def killing_metric(s: StructureConstants, check: bool = True) -> np.ndarray:
    """``g_{mu nu} = f_{mu rho}^tau f_{nu tau}^rho``."""
    g = np.einsum("mrt,ntr->mn", s.f, s.f)
    if check:
        cond = np.linalg.cond(g) if np.any(g) else np.inf
        if not np.isfinite(cond) or cond > KILLING_COND_MAX:
            raise ValueError(f"Killing metric is degenerate (condition number {cond:.3g})")
    return g


@dataclass
class ModelConfig:
    N: int
    hbar: float
    structure: StructureConstants
    penalty_weight: float = 1.0
    casimir_targets: list[float] = field(default_factory=lambda: [0.5])
    killing: np.ndarray = field(init=False, repr=False)
    ginv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.penalty_weight < 0:
            raise ValueError("penalty_weight must be >= 0")
        self.killing = killing_metric(self.structure)
        if not np.allclose(self.killing, self.killing.T):
            raise ValueError("Killing metric is not symmetric")
        self.ginv = np.linalg.inv(self.killing)

    @property
    def d(self) -> int:
        return self.structure.dim

    @property
    def nu(self) -> float:
        return self.casimir_targets[0] if self.casimir_targets else 0.0

    @property
    def killing_condition(self) -> float:
        return float(np.linalg.cond(self.killing))

    @classmethod
    def su2(cls, N: int, hbar: float | None = None, convention: str = "i",
            penalty_weight: float = 1.0, nu: float = 0.5) -> "ModelConfig":
        from .reps import hbar_for_k
        h = hbar_for_k(N) if hbar is None else hbar
        return cls(N, h, StructureConstants.su2(convention), penalty_weight, [nu])


def _check(X, cfg: ModelConfig) -> list[np.ndarray]:
    X = [check_matrix(x) for x in X]
    if len(X) != cfg.d:
        raise ValueError(f"expected {cfg.d} matrices, got {len(X)}")
    if any(x.shape != (cfg.N, cfg.N) for x in X):
        raise ValueError(f"matrices must be {cfg.N}x{cfg.N}")
    return X


def _raise(X, G):
    return [sum(G[m, a] * X[a] for a in range(len(X))) for m in range(len(X))]


@dataclass
class _Parts:
    Y: list
    C: list
    E: list
    F: np.ndarray


def _parts(X, cfg: ModelConfig) -> _Parts:
    d, h2 = cfg.d, cfg.hbar ** 2
    Y = _raise(X, cfg.ginv)
    C = [[commutator(X[m], X[n]) for n in range(d)] for m in range(d)]
    E = [sum(commutator(Y[m], C[m][n]) for m in range(d)) - h2 * X[n] for n in range(d)]
    F = sum(Y[m] @ X[m] for m in range(d)) - cfg.nu * np.eye(cfg.N)
    return _Parts(Y, C, E, F)


def action_parts(X, cfg: ModelConfig) -> dict:
    """Term-wise action: ``quartic``, ``quadratic`` and ``penalty``."""
    X = _check(X, cfg)
    Y = _raise(X, cfg.ginv)
    d = cfg.d
    quartic = 0.25 * sum(np.trace(commutator(X[m], X[n]) @ commutator(Y[m], Y[n]))
                         for m in range(d) for n in range(d))
    quadratic = 0.5 * cfg.hbar ** 2 * sum(np.trace(Y[m] @ X[m]) for m in range(d))
    F = sum(Y[m] @ X[m] for m in range(d)) - cfg.nu * np.eye(cfg.N)
    penalty = cfg.penalty_weight * np.linalg.norm(F) ** 2
    return {"quartic": complex(quartic), "quadratic": complex(quadratic),
            "penalty": float(penalty)}


def action_value(X, cfg: ModelConfig) -> complex:
    p = action_parts(X, cfg)
    return p["quartic"] + p["quadratic"] + p["penalty"]


def eom_residuals(X, cfg: ModelConfig) -> list[np.ndarray]:
    return _parts(_check(X, cfg), cfg).E


def eom_residual(X, cfg: ModelConfig) -> float:
    """``max_nu |[Y_mu, [X_mu, X_nu]] - hbar^2 X_nu|_F``."""
    return max(float(np.linalg.norm(e)) for e in eom_residuals(X, cfg))


def casimir_deviation(X, cfg: ModelConfig) -> float:
    return float(np.linalg.norm(_parts(_check(X, cfg), cfg).F))


def action_gradient(X, cfg: ModelConfig) -> list[np.ndarray]:
    """Gradient of ``Re S`` w.r.t. the real and imaginary parts of each entry,
    packed as ``d Re S / d Re X + i d Re S / d Im X``."""
    X = _check(X, cfg)
    P = _parts(X, cfg)
    w = cfg.penalty_weight
    out = []
    for m in range(cfg.d):
        # dS = tr(W_m dX_m), with W_m = -G_{ma} E_a
        W = -sum(cfg.ginv[m, a] * P.E[a] for a in range(cfg.d))
        Yh = P.Y[m].conj().T
        out.append(W.conj().T + 2 * w * (P.F @ Yh + Yh @ P.F))
    return out


def merit(X, cfg: ModelConfig) -> float:
    """``1/2 sum |E_nu|^2 + w/2 |F|^2``; zero exactly on penalized solutions."""
    P = _parts(X, cfg)
    return 0.5 * sum(np.linalg.norm(e) ** 2 for e in P.E) + 0.5 * cfg.penalty_weight * np.linalg.norm(P.F) ** 2


def merit_gradient(X, cfg: ModelConfig) -> list[np.ndarray]:
    """Adjoint gradient of :func:`merit` in the same packing as :func:`action_gradient`."""
    P = _parts(X, cfg)
    d, G, H = cfg.d, cfg.ginv, lambda a: a.conj().T
    g = [np.zeros_like(X[0]) for _ in range(d)]
    for m in range(d):
        Yh = H(P.Y[m])
        for n in range(d):
            t = commutator(P.E[n], H(P.C[m][n]))
            for a in range(d):
                g[a] += np.conj(G[m, a]) * t
            inner = commutator(Yh, P.E[n])
            g[m] += commutator(inner, H(X[n]))
            g[n] += commutator(H(X[m]), inner)
    for n in range(d):
        g[n] -= cfg.hbar ** 2 * P.E[n]
    for b in range(d):
        Yh = H(P.Y[b])
        g[b] += cfg.penalty_weight * (P.F @ Yh + Yh @ P.F)
    return g


def _ip(A, B) -> float:
    return sum(float(np.vdot(a, b).real) for a, b in zip(A, B))


def _gnorm(g) -> float:
    return float(np.sqrt(_ip(g, g)))


@dataclass
class SolveResult:
    X: list[np.ndarray]
    converged: bool
    iterations: int
    eom_residual: float
    casimir_deviation: float
    grad_norm: float
    trace: list[dict] = field(repr=False, default_factory=list)

    def trace_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["iter", "action", "grad_norm", "eom_residual"],
                           lineterminator="\n")
        w.writeheader()
        w.writerows(self.trace)
        return buf.getvalue()


def solve_matrix_model(cfg: ModelConfig, init, opts: dict | None = None) -> SolveResult:
    """Gradient descent to a stationary point of the action.

    Descends the stationarity merit :func:`merit` (the action itself has no minima)
    with Barzilai-Borwein steps and a nonmonotone Armijo backtracking line search.
    Stops when ``|grad S| <= tol`` and the EOM residual is below ``tol``, or after
    ``max_iter`` steps, returning the best iterate.

    opts: ``step`` (initial step, 1.0), ``max_iter`` (10000), ``tol`` (1e-8),
    ``memory`` (10, line-search window), ``trace_every`` (1).
    """
    o = {"step": 1.0, "max_iter": 10000, "tol": 1e-8, "memory": 10, "trace_every": 1}
    o.update(opts or {})
    X = _check(init, cfg)
    step, tol = float(o["step"]), float(o["tol"])
    phi, g = merit(X, cfg), merit_gradient(X, cfg)
    hist = [phi]
    trace = []
    best = (phi, X)
    it = 0
    for it in range(int(o["max_iter"]) + 1):
        gs = _gnorm(action_gradient(X, cfg))
        res = eom_residual(X, cfg)
        if it % int(o["trace_every"]) == 0:
            trace.append({"iter": it, "action": float(action_value(X, cfg).real),
                          "grad_norm": gs, "eom_residual": res})
        if gs <= tol and res <= tol:
            return SolveResult(X, True, it, res, casimir_deviation(X, cfg), gs, trace)
        if it == int(o["max_iter"]):
            break
        gn2 = _ip(g, g)
        ref = max(hist[-int(o["memory"]):])
        a = step
        while True:
            Xn = [x - a * d for x, d in zip(X, g)]
            pn = merit(Xn, cfg)
            if pn <= ref - 1e-4 * a * gn2 or a < 1e-14:
                break
            a *= 0.5
        gnew = merit_gradient(Xn, cfg)
        s = [p - q for p, q in zip(Xn, X)]
        y = [p - q for p, q in zip(gnew, g)]
        sy = _ip(s, y)
        # alternate the two Barzilai-Borwein step lengths
        if sy > 0:
            step = _ip(s, s) / sy if it % 2 == 0 else sy / _ip(y, y)
        else:
            step = 1.0
        step = min(max(step, 1e-10), 1e10)
        X, g, phi = Xn, gnew, pn
        hist.append(phi)
        if phi < best[0]:
            best = (phi, X)
    Xb = best[1]
    return SolveResult(Xb, False, it, eom_residual(Xb, cfg), casimir_deviation(Xb, cfg),
                       _gnorm(action_gradient(Xb, cfg)), trace)


def su2_solution(cfg: ModelConfig) -> list[np.ndarray]:
    """The spin-(N-1)/2 representation solving the EOM for an su(2) config."""
    conv = "i" if np.allclose(cfg.structure.f, StructureConstants.su2("i").f) else "real"
    return RepSet.su2(cfg.N, cfg.hbar, conv).generators


def perturb(X, rng: np.random.Generator, rel: float = 0.01) -> list[np.ndarray]:
    """Add complex Gaussian noise at ``rel`` times the RMS entry size."""
    scale = rel * np.sqrt(np.mean([np.mean(np.abs(x) ** 2) for x in X]))
    n = X[0].shape[0]
    return [x + scale * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
            for x in X]


def classify_solution(X, cfg: ModelConfig, tol: float = 1e-6) -> dict:
    """Whether a stationary point is a Lie-algebra representation with the model's hbar."""
    rep = RepSet(list(X), cfg.hbar, cfg.structure)
    dev = validate_repset(rep)
    size = max(float(np.linalg.norm(x)) for x in X)
    if size <= tol:
        kind = "trivial"
    elif dev <= tol:
        kind = "representation"
    else:
        kind = "non-representation"
    return {"kind": kind, "rep_deviation": dev, "eom_residual": eom_residual(X, cfg),
            "casimir_deviation": casimir_deviation(X, cfg)}
