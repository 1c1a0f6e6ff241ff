"""Lie structure constants, Poisson structures and their brackets."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .polynomial import ZERO_TOL, Polynomial, TorusFunction


def levi_civita(n: int = 3) -> np.ndarray:
    eps = np.zeros((n,) * n)
    for p in permutations(range(n)):
        eps[p] = np.linalg.det(np.eye(n)[list(p)])
    return eps


class StructureConstants:
    """Rank-3 tensor ``f[i, j, k]`` with ``[e_i, e_j] = f[i, j, k] e_k``.

    Construction validates antisymmetry and the Jacobi identity.
    """

    def __init__(self, f, tol: float = ZERO_TOL, validate: bool = True):
        f = np.asarray(f, dtype=complex)
        if f.ndim != 3 or len(set(f.shape)) != 1:
            raise ValueError(f"structure constants must be d x d x d, got shape {f.shape}")
        self.f = f
        if validate:
            scale = max(1.0, float(np.abs(f).max(initial=0.0)) ** 2)
            anti = float(np.abs(f + f.transpose(1, 0, 2)).max(initial=0.0))
            if anti > tol * scale:
                raise ValueError(f"structure constants not antisymmetric (deviation {anti:.3g})")
            jac = self.jacobi_deviation()
            if jac > tol * scale:
                raise ValueError(f"structure constants violate Jacobi (deviation {jac:.3g})")

    @property
    def dim(self) -> int:
        return self.f.shape[0]

    def jacobi_deviation(self) -> float:
        f = self.f
        t = (np.einsum("ijk,klm->ijlm", f, f)
             + np.einsum("jlk,kim->ijlm", f, f)
             + np.einsum("lik,kjm->ijlm", f, f))
        return float(np.abs(t).max(initial=0.0))

    @classmethod
    def su2(cls, convention: str = "i") -> "StructureConstants":
        """su(2): ``f = i eps`` (Hermitian generators) or ``f = eps`` (real form)."""
        eps = levi_civita(3)
        if convention == "i":
            return cls(1j * eps)
        if convention == "real":
            return cls(eps)
        raise ValueError(f"unknown su(2) convention {convention!r}")

    @classmethod
    def abelian(cls, d: int) -> "StructureConstants":
        return cls(np.zeros((d, d, d)))

    def __eq__(self, other):
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.f.shape == other.f.shape and np.allclose(self.f, other.f, atol=ZERO_TOL)

    __hash__ = None

    def to_dict(self) -> dict:
        return {"dim": self.dim, "re": self.f.real.tolist(), "im": self.f.imag.tolist()}

    @classmethod
    def from_dict(cls, data) -> "StructureConstants":
        return cls(np.asarray(data["re"]) + 1j * np.asarray(data.get("im", 0.0)))


@dataclass(frozen=True)
class PoissonStructure:
    """Descriptor of a Poisson bracket.

    ``kind`` is one of ``canonical`` (2 variables, {x, y} = 1), ``kirillov_kostant``
    (omega_ij = f_ij^k x^k), ``sphere`` (3 variables, {x^a, x^b} = eps^{abc} x^c modulo
    x.x = radius_sq) or ``torus`` (Fourier modes, see :func:`torus_bracket`).
    """

    kind: str
    nvars: int
    structure: StructureConstants | None = field(default=None, compare=False)
    radius_sq: complex = 1.0

    def __post_init__(self):
        if self.kind == "kirillov_kostant" and self.structure is None:
            raise ValueError("Kirillov-Kostant structure needs structure constants")
        if self.kind == "sphere" and self.nvars != 3:
            raise ValueError("sphere quotient has exactly 3 variables")
        if self.kind not in ("canonical", "kirillov_kostant", "sphere", "torus"):
            raise ValueError(f"unknown Poisson structure kind {self.kind!r}")

    @classmethod
    def canonical(cls) -> "PoissonStructure":
        return cls("canonical", 2)

    @classmethod
    def kirillov_kostant(cls, s: StructureConstants) -> "PoissonStructure":
        return cls("kirillov_kostant", s.dim, s)

    @classmethod
    def sphere(cls, radius_sq: complex = 1.0) -> "PoissonStructure":
        return cls("sphere", 3, StructureConstants(levi_civita(3)), radius_sq)

    @classmethod
    def torus(cls) -> "PoissonStructure":
        return cls("torus", 2)

    def omega(self) -> list[list[Polynomial]]:
        """Bivector components ``omega_ij`` as polynomials."""
        n = self.nvars
        if self.kind == "canonical":
            one = Polynomial.constant(1.0, 2)
            zero = Polynomial.zero(2)
            return [[zero, one], [-one, zero]]
        if self.kind == "torus":
            raise ValueError("torus bracket acts on TorusFunction, not on polynomials")
        f = self.structure.f
        xs = Polynomial.variables(n)
        return [[sum((f[i, j, k] * xs[k] for k in range(n)), Polynomial.zero(n))
                 for j in range(n)] for i in range(n)]

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "nvars": self.nvars}
        if self.kind == "kirillov_kostant":
            d["structure"] = self.structure.to_dict()
        if self.kind == "sphere":
            r = complex(self.radius_sq)
            d["radius_sq"] = [r.real, r.imag]
        return d

    @classmethod
    def from_dict(cls, data) -> "PoissonStructure":
        kind = data["kind"]
        if kind == "canonical":
            return cls.canonical()
        if kind == "torus":
            return cls.torus()
        if kind == "sphere":
            r = data.get("radius_sq", [1.0, 0.0])
            return cls.sphere(complex(r[0], r[1]))
        return cls.kirillov_kostant(StructureConstants.from_dict(data["structure"]))


def poisson_bracket(f, g, s: PoissonStructure):
    """``{f, g} = d_i f omega_ij d_j g`` for polynomials, or the torus bracket."""
    if s.kind == "torus":
        return torus_bracket(f, g)
    if f.nvars != s.nvars or g.nvars != s.nvars:
        raise ValueError(f"nvars mismatch: f={f.nvars}, g={g.nvars}, structure={s.nvars}")
    omega = s.omega()
    df = [f.diff(i) for i in range(s.nvars)]
    dg = [g.diff(j) for j in range(s.nvars)]
    out = Polynomial.zero(s.nvars)
    for i in range(s.nvars):
        if not df[i]:
            continue
        for j in range(s.nvars):
            if omega[i][j] and dg[j]:
                out = out + df[i] * omega[i][j] * dg[j]
    return out


def jacobi_defect(s: PoissonStructure, f, g, h):
    """``{{f,g},h} + {{g,h},f} + {{h,f},g}``; zero for a Poisson structure."""
    pb = lambda a, b: poisson_bracket(a, b, s)
    return pb(pb(f, g), h) + pb(pb(g, h), f) + pb(pb(h, f), g)


def torus_bracket(f: TorusFunction, g: TorusFunction) -> TorusFunction:
    """``{y_l, y_m} = -pi (l1 m2 - l2 m1) y_{l+m}``, extended bilinearly."""
    terms: dict = {}
    for l, a in f.terms.items():
        for m, b in g.terms.items():
            w = l[0] * m[1] - l[1] * m[0]
            if w == 0:
                continue
            key = (l[0] + m[0], l[1] + m[1])
            terms[key] = terms.get(key, 0) - math.pi * w * a * b
    return TorusFunction(terms)
