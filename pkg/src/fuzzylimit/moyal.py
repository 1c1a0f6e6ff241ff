"""Moyal products on C[x, y], the intertwiner T and the inclusion quantizations."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .poisson import PoissonStructure
from .polynomial import Polynomial


@dataclass(frozen=True)
class MoyalSpec:
    """Bi-differential data ``(H, nu)`` of ``f *_H g = f exp(nu H_ij <d_i d_j>) g``."""

    H: np.ndarray
    nu: complex = 1.0
    J: np.ndarray = field(init=False, repr=False, compare=False)
    K: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        H = np.array(self.H, dtype=complex)
        if H.shape != (2, 2):
            raise ValueError(f"H must be 2x2, got {H.shape}")
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "nu", complex(self.nu))
        object.__setattr__(self, "J", (H - H.T) / 2)
        object.__setattr__(self, "K", (H + H.T) / 2)

    @classmethod
    def star_p(cls, p: float) -> "MoyalSpec":
        """The family ``*_p`` with exponent ``(ip/2)(<d_x d_y> - <d_y d_x>)``."""
        return cls(np.array([[0, p / 2], [-p / 2, 0]]), 1j)

    @classmethod
    def random(cls, rng: np.random.Generator, scale: float = 1.0) -> "MoyalSpec":
        H = scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        return cls(H, complex(rng.normal(), rng.normal()))

    def antisymmetric(self) -> "MoyalSpec":
        """Same ``nu`` with ``H`` replaced by its antisymmetric part ``J``."""
        return MoyalSpec(self.J, self.nu)

    @property
    def hbar(self) -> complex:
        # [x, y]_* = nu (H_12 - H_21) = i hbar {x, y}
        return self.nu * (self.H[0, 1] - self.H[1, 0]) / 1j

    def __eq__(self, other):
        if not isinstance(other, MoyalSpec):
            return NotImplemented
        return np.allclose(self.H, other.H) and np.isclose(self.nu, other.nu)

    __hash__ = None

    def to_dict(self) -> dict:
        return {"H": [[[z.real, z.imag] for z in row] for row in self.H],
                "nu": [self.nu.real, self.nu.imag]}

    @classmethod
    def from_dict(cls, data) -> "MoyalSpec":
        H = np.array([[complex(*z) for z in row] for row in data["H"]])
        nu = data.get("nu", [1.0, 0.0])
        nu = complex(*nu) if isinstance(nu, (list, tuple)) else complex(nu)
        return cls(H, nu)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "MoyalSpec":
        return cls.from_dict(json.loads(text))


def _check2(*polys):
    for p in polys:
        if p.nvars != 2:
            raise ValueError(f"Moyal products act on 2-variable polynomials, got nvars={p.nvars}")


def moyal_product(f: Polynomial, g: Polynomial, spec: MoyalSpec) -> Polynomial:
    """Exact ``f *_H g``; the series stops once the derivative order exceeds a degree."""
    _check2(f, g)
    H, nu = spec.H, spec.nu
    out = f * g
    lmax = min(f.degree, g.degree)
    for l in range(1, lmax + 1):
        # (H11 dx(x)dx + H12 dx(x)dy + H21 dy(x)dx + H22 dy(x)dy)^l by multinomial counts
        for a, b, c in product(range(l + 1), repeat=3):
            d = l - a - b - c
            if d < 0:
                continue
            w = (H[0, 0] ** a * H[0, 1] ** b * H[1, 0] ** c * H[1, 1] ** d
                 / (math.factorial(a) * math.factorial(b) * math.factorial(c) * math.factorial(d)))
            if w == 0:
                continue
            df = f.diff_multi((a + b, c + d))
            if not df:
                continue
            dg = g.diff_multi((a + c, b + d))
            if not dg:
                continue
            out = out + (nu ** l * w) * (df * dg)
    return out


def _second_order(f: Polynomial, K: np.ndarray) -> Polynomial:
    out = Polynomial.zero(2)
    for i in range(2):
        for j in range(2):
            if K[i, j] != 0:
                orders = [0, 0]
                orders[i] += 1
                orders[j] += 1
                out = out + K[i, j] * f.diff_multi(orders)
    return out


def intertwiner_apply(f: Polynomial, spec: MoyalSpec, inverse: bool = False) -> Polynomial:
    """``T f = exp(-nu/2 K_ij d_i d_j) f`` (or ``T^{-1}`` with ``inverse=True``)."""
    _check2(f)
    sign = 1.0 if inverse else -1.0
    coef = sign * 0.5 * spec.nu
    out = f
    term = f
    l = 0
    while term:
        l += 1
        term = _second_order(term, spec.K) * (coef / l)
        out = out + term
    return out


def intertwiner_defect(f: Polynomial, g: Polynomial, spec: MoyalSpec) -> float:
    """Coefficient norm of ``T(f *_H g) - T(f) *_J T(g)``."""
    lhs = intertwiner_apply(moyal_product(f, g, spec), spec)
    rhs = moyal_product(intertwiner_apply(f, spec), intertwiner_apply(g, spec),
                        spec.antisymmetric())
    return (lhs - rhs).norm()


def intertwiner(source: MoyalSpec, target: MoyalSpec):
    """Linear map ``T_target^{-1} o T_source`` between two Moyal algebras."""
    def t(f: Polynomial) -> Polynomial:
        return intertwiner_apply(intertwiner_apply(f, source), target, inverse=True)
    return t


def associator_norm(f: Polynomial, g: Polynomial, h: Polynomial, spec: MoyalSpec) -> float:
    star = lambda a, b: moyal_product(a, b, spec)
    return (star(star(f, g), h) - star(f, star(g, h))).norm()


@dataclass(frozen=True)
class MoyalQuantization:
    """Inclusion ``q_H: (C[x,y], ., {,}) -> (C[x,y], *_H)``."""

    spec: MoyalSpec
    source: PoissonStructure = field(default_factory=PoissonStructure.canonical)
    bracket_factor: complex = 1j

    @property
    def hbar(self) -> complex:
        return self.spec.hbar

    def __call__(self, f: Polynomial) -> Polynomial:
        _check2(f)
        return f

    def product(self, a: Polynomial, b: Polynomial) -> Polynomial:
        return moyal_product(a, b, self.spec)

    def identity(self) -> Polynomial:
        return Polynomial.constant(1.0, 2)
