"""Numerical classical-limit checks: cones, defect scaling, equivalence, strong-limit falsifier."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .linalg import numerical_rank
from .polynomial import Polynomial, monomials_upto
from .quantize import QuantizationMap, defect, rescale_qmap
from .reps import commutator
from .span import generated_algebra_dim


def _vec(values) -> np.ndarray:
    """Stack matrices or polynomials as rows of coefficient vectors."""
    values = list(values)
    if values and isinstance(values[0], Polynomial):
        keys = sorted({e for v in values for e in v.terms})
        return np.array([[v.coeff(e) for e in keys] for v in values]).reshape(len(values), -1)
    return np.array([np.asarray(v, dtype=complex).ravel() for v in values])


def _dist(a, b) -> float:
    if isinstance(a, Polynomial):
        return (a - b).norm()
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


@dataclass
class ConeDescriptor:
    """A vertex algebra with legs ``t_i`` and morphisms ``m_ij`` that must satisfy
    ``m_ij o t_i = t_j``."""

    vertex: object
    legs: list
    morphisms: list[tuple[int, int, Callable]] = field(default_factory=list)

    def __post_init__(self):
        for i, j, _ in self.morphisms:
            if not (0 <= i < len(self.legs) and 0 <= j < len(self.legs)):
                raise ValueError(f"morphism ({i}, {j}) references a missing leg")


def check_cone(c: ConeDescriptor, test_basis: Sequence, tol: float = 1e-10) -> tuple[bool, float]:
    """Max over morphisms and basis elements of ``|m_ij(t_i f) - t_j f|``."""
    worst = 0.0
    for i, j, m in c.morphisms:
        for f in test_basis:
            worst = max(worst, _dist(m(c.legs[i](f)), c.legs[j](f)))
    return worst <= tol, worst


@dataclass
class ScanReport:
    family: str
    pair: list[str]
    rows: list[dict]
    slope: float | None
    residual: float | None
    verdict: str
    norm: str = "fro"

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def _defect_norm(D: np.ndarray, norm: str) -> float:
    if norm == "fro":
        return float(np.linalg.norm(D))
    if norm == "normalized":
        return float(np.linalg.norm(D) / np.sqrt(D.shape[0]))
    if norm == "op":
        return float(np.linalg.norm(D, 2))
    raise ValueError(f"unknown norm {norm!r}")


def exact_threshold(qf: np.ndarray, qg: np.ndarray) -> float:
    """Defects below this are treated as exactly zero."""
    return 1e-10 * (1.0 + float(np.linalg.norm(commutator(qf, qg))))


def scaling_exponent(f, g, family: Callable[[int], QuantizationMap], k_range,
                     norm: str = "fro", threshold: float = 1.5,
                     name: str = "") -> ScanReport:
    """Least-squares slope of ``log |defect|`` against ``log |hbar_k|``.

    Verdicts: ``exact`` when every defect vanishes, ``pass`` when the slope is at least
    ``threshold``, ``fail`` otherwise or with fewer than 3 nonzero points.
    """
    rows = []
    for k in k_range:
        q = family(k)
        D = defect(f, g, q)
        zero = np.linalg.norm(D) <= exact_threshold(q(f), q(g))
        rows.append({"k": int(k), "hbar": abs(q.hbar),
                     "defect_norm": 0.0 if zero else _defect_norm(D, norm)})
    pts = [(r["hbar"], r["defect_norm"]) for r in rows if r["defect_norm"] > 0]
    pair = [repr(f), repr(g)]
    if not pts:
        return ScanReport(name, pair, rows, None, None, "exact", norm)
    if len(pts) < 3:
        return ScanReport(name, pair, rows, None, None, "fail", norm)
    x, y = np.log(np.array(pts)).T
    slope, icpt = np.polyfit(x, y, 1)
    res = float(np.sqrt(np.mean((y - (slope * x + icpt)) ** 2)))
    verdict = "pass" if slope >= threshold else "fail"
    return ScanReport(name, pair, rows, float(slope), res, verdict, norm)


@dataclass
class EquivalenceResult:
    equivalent: bool
    bijective: bool
    morphism_deviation: float
    comma_deviation: float | None
    dims: tuple[int, int]
    reason: str = ""


def equivalence_check(qA, qB, iso: Callable, degree: int, phi: Callable | None = None,
                      tol: float = 1e-10, max_word_len: int | None = None) -> EquivalenceResult:
    """Finite-degree check that ``iso`` identifies the algebras generated by ``qA`` and ``qB``.

    Tests, on monomials of degree <= ``degree``: bijectivity of ``iso`` between the image
    subspaces, ``iso(a b) = iso(a) iso(b)`` on products of two images, and, when ``phi``
    is given, the square ``iso o qA = qB o phi``. Matrix targets additionally compare the
    dimensions of the generated algebras.
    """
    nvars = qA.source.nvars
    basis = [Polynomial.monomial(e) for e in monomials_upto(nvars, degree)]
    imA = [qA(p) for p in basis]
    imB = [qB(p) for p in basis]
    mapped = [iso(a) for a in imA]
    rA, rB = numerical_rank(_vec(imA)), numerical_rank(_vec(imB))
    r_iso = numerical_rank(_vec(mapped))
    # an injective iso into the span of qB's images with matching dimensions
    r_joint = numerical_rank(_vec(mapped + imB))
    bijective = rA == r_iso == rB == r_joint
    dims = (rA, rB)
    reason = ""
    if isinstance(qA, QuantizationMap) and isinstance(qB, QuantizationMap):
        L = max_word_len or 2 * max(qA.dim, qB.dim)
        dims = (generated_algebra_dim(qA.images, L), generated_algebra_dim(qB.images, L))
        if dims[0] != dims[1]:
            reason = f"generated algebras differ in dimension ({dims[0]} vs {dims[1]})"
    if not bijective and not reason:
        reason = f"iso not bijective on degree <= {degree} (ranks {rA}, {r_iso}, {rB})"
    dev = 0.0
    if not reason:
        for a in imA:
            for b in imA:
                dev = max(dev, _dist(iso(qA.product(a, b)), qB.product(iso(a), iso(b))))
        if dev > tol:
            reason = f"iso is not multiplicative (deviation {dev:.3g})"
    comma = None
    if phi is not None:
        comma = max(_dist(iso(qA(p)), qB(phi(p))) for p in basis)
        if comma > tol and not reason:
            reason = f"comma square fails (deviation {comma:.3g})"
    return EquivalenceResult(not reason, bijective, dev, comma, dims, reason)


def strong_limit_falsifier(q: QuantizationMap) -> QuantizationMap:
    """A quantization of the same algebra with half the deformation parameter."""
    return rescale_qmap(q, q.hbar / 2)
