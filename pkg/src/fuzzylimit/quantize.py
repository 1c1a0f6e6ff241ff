"""Quantization maps into matrix algebras: fuzzy sphere, fuzzy torus and symmetrized Lie maps."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial

import numpy as np

from .linalg import OrthoSpan
from .poisson import PoissonStructure, poisson_bracket
from .polynomial import Polynomial, TorusFunction, monomials_of_degree
from .reps import (RepSet, check_matrix, clock_shift, commutator, fuzzy_sphere_generators,
                   hbar_for_k, matrix_from_dict, matrix_to_dict)
from .sphere import harmonic_decompose

METHODS = ("sphere", "torus", "lie")


def torus_hbar(k: int) -> float:
    """``hbar_tor = 2/k``: matches the leading term of the clock-shift commutator."""
    return 2.0 / k


class SymProducts:
    """Memoized symmetrized products of a fixed list of matrices.

    Uses ``sym(c) = sum_a (c_a / l) X_a sym(c - e_a)`` over count vectors ``c``.
    """

    def __init__(self, generators: list[np.ndarray]):
        self.generators = generators
        self.dim = generators[0].shape[0]
        self._memo: dict = {}

    def __call__(self, counts) -> np.ndarray:
        counts = tuple(int(c) for c in counts)
        hit = self._memo.get(counts)
        if hit is not None:
            return hit
        l = sum(counts)
        if l == 0:
            out = np.eye(self.dim, dtype=complex)
        else:
            out = np.zeros((self.dim, self.dim), dtype=complex)
            for a, c in enumerate(counts):
                if c:
                    rest = counts[:a] + (c - 1,) + counts[a + 1:]
                    out += (c / l) * (self.generators[a] @ self(rest))
        self._memo[counts] = out
        return out


@dataclass(eq=False)
class QuantizationMap:
    """Linear map from a Poisson algebra to ``Mat_dim(C)``.

    ``method`` selects how a source element is evaluated on ``generators``:

    * ``sphere``: trace-free harmonic tensors modulo ``x.x = radius_sq``, contracted with
      the generators up to ``truncation_degree``;
    * ``torus``: ``y_{l1,l2} -> U^{l1} V^{l2}`` with ``generators = [U, V]``;
    * ``lie``: monomials mapped to symmetrized products, degrees above
      ``truncation_degree`` dropped.

    The whole map is multiplied by ``scale`` (rescaling multiplies it, see
    :func:`rescale_qmap`). ``bracket_factor`` is the constant ``c`` in the defect
    ``[q f, q g] - c hbar q({f, g})``.
    """

    method: str
    source: PoissonStructure
    hbar: complex
    generators: list[np.ndarray]
    truncation_degree: int | None = None
    bracket_factor: complex = 1j
    scale: complex = 1.0
    radius_sq: complex = 1.0
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown quantization method {self.method!r}")
        if self.hbar == 0:
            raise ValueError("a quantization map needs hbar != 0")
        self.generators = [check_matrix(g, f"generator {i}") for i, g in enumerate(self.generators)]
        if not self.generators:
            raise ValueError("at least one generator image is required")
        if len({g.shape for g in self.generators}) != 1:
            raise ValueError("generator images must share one dimension")
        self.hbar = complex(self.hbar)

    @property
    def dim(self) -> int:
        return self.generators[0].shape[0]

    @property
    def images(self) -> list[np.ndarray]:
        """Images of the coordinate functions (``x^a`` or ``y_{1,0}, y_{0,1}``)."""
        return [self.scale * g for g in self.generators]

    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)

    @staticmethod
    def product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return a @ b

    def bracket(self, f, g):
        return poisson_bracket(f, g, self.source)

    def __call__(self, f) -> np.ndarray:
        if self.method == "torus":
            if not isinstance(f, TorusFunction):
                raise TypeError("torus maps act on TorusFunction")
            return self.scale * self._torus(f)
        if f.nvars != len(self.generators):
            raise ValueError(f"polynomial has {f.nvars} variables, map has "
                             f"{len(self.generators)} generators")
        if self.method == "sphere":
            return self.scale * self._sphere(f)
        return self.scale * self._lie(f)

    # evaluation ------------------------------------------------------------
    def _contract(self, t: np.ndarray) -> np.ndarray:
        # sum t_{a1..al} X_a1 ... X_al; equals the symmetrized sum since t is symmetric
        if t.ndim == 0:
            return complex(t) * self.identity()
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for a, x in enumerate(self.generators):
            if np.any(t[a]):
                out += x @ self._contract(t[a])
        return out

    def _sphere(self, f: Polynomial) -> np.ndarray:
        tensors = harmonic_decompose(f, self.radius_sq)
        top = len(tensors) - 1 if self.truncation_degree is None else self.truncation_degree
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for t in tensors[: top + 1]:
            out += self._contract(t)
        return out

    def _torus(self, f: TorusFunction) -> np.ndarray:
        U, V = self.generators
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for (l1, l2), c in f.terms.items():
            out += c * np.linalg.matrix_power(U, l1) @ np.linalg.matrix_power(V, l2)
        return out

    def sym(self, counts: tuple[int, ...]) -> np.ndarray:
        """Symmetrized product with ``counts[a]`` copies of generator ``a``."""
        if "sym" not in self._cache:
            self._cache["sym"] = SymProducts(self.generators)
        return self._cache["sym"](counts)

    def _lie(self, f: Polynomial) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for exps, c in f.terms.items():
            if self.truncation_degree is not None and sum(exps) > self.truncation_degree:
                continue
            out += c * self.sym(exps)
        return out

    # serialization -----------------------------------------------------------
    def to_dict(self) -> dict:
        pair = lambda z: [complex(z).real, complex(z).imag]
        return {"method": self.method, "source": self.source.to_dict(), "hbar": pair(self.hbar),
                "dim": self.dim, "truncation_degree": self.truncation_degree,
                "bracket_factor": pair(self.bracket_factor), "scale": pair(self.scale),
                "radius_sq": pair(self.radius_sq),
                "generators": [matrix_to_dict(g) for g in self.generators]}

    @classmethod
    def from_dict(cls, data) -> "QuantizationMap":
        c = lambda z: complex(*z)
        return cls(data["method"], PoissonStructure.from_dict(data["source"]), c(data["hbar"]),
                   [matrix_from_dict(g) for g in data["generators"]],
                   data.get("truncation_degree"), c(data["bracket_factor"]), c(data["scale"]),
                   c(data.get("radius_sq", [1.0, 0.0])))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "QuantizationMap":
        return cls.from_dict(json.loads(text))


# constructors ----------------------------------------------------------------
def sphere_qmap(k: int) -> QuantizationMap:
    """Fuzzy-sphere map ``t_k`` with ``X^a = hbar_k J^a`` and cutoff degree ``k - 1``."""
    return QuantizationMap("sphere", PoissonStructure.sphere(), hbar_for_k(k),
                           fuzzy_sphere_generators(k), truncation_degree=k - 1)


def torus_qmap(k: int) -> QuantizationMap:
    U, V, _ = clock_shift(k)
    return QuantizationMap("torus", PoissonStructure.torus(), torus_hbar(k), [U, V])


def truncation_degree(generators: list[np.ndarray], max_degree: int | None = None) -> int:
    """Last degree at which the span of symmetrized products of degree <= l still grows."""
    n = generators[0].shape[0]
    sym = SymProducts(generators)
    span = OrthoSpan(n * n)
    span.add(sym((0,) * len(generators)).ravel())
    cap = n * n if max_degree is None else max_degree
    for l in range(1, cap + 1):
        grew = span.add(np.array([sym(e).ravel()
                                  for e in monomials_of_degree(len(generators), l)]))
        if not grew:
            return l - 1
        if span.dim == n * n:
            return l
    return cap


def lie_qmap(rep: RepSet, n_mu: int | None = None) -> QuantizationMap:
    """Symmetrized map ``q_mu`` from the Kirillov-Kostant algebra of ``rep.structure``."""
    n = truncation_degree(rep.generators) if n_mu is None else n_mu
    return QuantizationMap("lie", PoissonStructure.kirillov_kostant(rep.structure), rep.hbar,
                           rep.generators, truncation_degree=n, bracket_factor=1.0)


# public operations -----------------------------------------------------------
def quantize_sphere(f: Polynomial, k: int) -> np.ndarray:
    return sphere_qmap(k)(f)


def quantize_torus(f: TorusFunction, k: int) -> np.ndarray:
    return torus_qmap(k)(f)


def quantize_lie(f: Polynomial, rep: RepSet) -> np.ndarray:
    return lie_qmap(rep)(f)


def symmetrize(word: list[np.ndarray], dim: int | None = None) -> np.ndarray:
    """Average of the products over all orderings of ``word`` (brute force).

    The empty word gives the identity of size ``dim``.
    """
    if not word:
        if dim is None:
            raise ValueError("the empty word needs an explicit dim")
        return np.eye(dim, dtype=complex)
    mats = [check_matrix(w) for w in word]
    if len({m.shape for m in mats}) != 1:
        raise ValueError("word matrices must share one dimension")
    out = np.zeros_like(mats[0])
    for perm in permutations(range(len(mats))):
        p = np.eye(mats[0].shape[0], dtype=complex)
        for i in perm:
            p = p @ mats[i]
        out += p
    return out / factorial(len(mats))


def defect(f, g, q: QuantizationMap) -> np.ndarray:
    """``[q f, q g] - c hbar q({f, g})`` with ``c = q.bracket_factor``."""
    qf, qg = q(f), q(g)
    return commutator(qf, qg) - q.bracket_factor * q.hbar * q(q.bracket(f, g))


def rescale_qmap(q: QuantizationMap, x: complex) -> QuantizationMap:
    """``q^x = (x / hbar) q``, a quantization map with ``hbar(q^x) = x``."""
    if x == 0:
        raise ValueError("rescaling needs x != 0")
    return QuantizationMap(q.method, q.source, x, q.generators, q.truncation_degree,
                           q.bracket_factor, q.scale * x / q.hbar, q.radius_sq)


def direct_sum_qmap(q: QuantizationMap) -> QuantizationMap:
    """``q (+) q``: every image doubled into a block-diagonal matrix."""
    z = np.zeros_like(q.generators[0])
    gens = [np.block([[g, z], [z, g]]) for g in q.generators]
    return QuantizationMap(q.method, q.source, q.hbar, gens, q.truncation_degree,
                           q.bracket_factor, q.scale, q.radius_sq)
