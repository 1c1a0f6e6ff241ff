"""Sparse complex multivariate polynomials and Fourier modes on the torus."""
from __future__ import annotations

import json
import math
from itertools import product
from typing import Iterable, Mapping

import numpy as np

#: Coefficients with magnitude at or below this value are dropped.
ZERO_TOL = 1e-12

Exps = tuple[int, ...]


def _prune(terms: Mapping, tol: float) -> dict:
    return {k: complex(v) for k, v in terms.items() if abs(v) > tol}


class Polynomial:
    """Polynomial in ``nvars`` commuting variables, stored as ``{exponents: coeff}``.

    Instances are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, terms: Mapping[Exps, complex] | None = None, nvars: int | None = None,
                 tol: float = ZERO_TOL):
        terms = dict(terms or {})
        if nvars is None:
            if not terms:
                raise ValueError("nvars is required for an empty polynomial")
            nvars = len(next(iter(terms)))
        if nvars < 1:
            raise ValueError("nvars must be positive")
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not have length {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            clean[exps] = clean.get(exps, 0) + complex(c)
        self.nvars = nvars
        self.terms = _prune(clean, tol)

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls({}, nvars)

    @classmethod
    def constant(cls, c: complex, nvars: int) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        """The coordinate ``x_i`` (0-based)."""
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1.0}, nvars)

    @classmethod
    def monomial(cls, exps: Iterable[int], c: complex = 1.0) -> "Polynomial":
        exps = tuple(exps)
        return cls({exps: c}, len(exps))

    @classmethod
    def variables(cls, nvars: int) -> list["Polynomial"]:
        return [cls.variable(i, nvars) for i in range(nvars)]

    @classmethod
    def random(cls, nvars: int, degree: int, rng: np.random.Generator,
               density: float = 1.0) -> "Polynomial":
        """Random complex polynomial with Gaussian coefficients up to ``degree``."""
        terms = {}
        for exps in monomials_upto(nvars, degree):
            if rng.random() <= density:
                terms[exps] = complex(rng.normal(), rng.normal())
        return cls(terms, nvars)

    # basic protocol -------------------------------------------------------
    def __repr__(self):
        if not self.terms:
            return f"Polynomial(0, nvars={self.nvars})"
        parts = []
        for exps, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}"
                            for i, e in enumerate(exps) if e)
            parts.append(f"({c:.6g})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if np.isscalar(other):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return Polynomial(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({k: -v for k, v in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if np.isscalar(other):
            return Polynomial({k: v * other for k, v in self.terms.items()}, self.nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial(terms, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1.0 / c)

    def __pow__(self, n: int):
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = Polynomial.constant(1.0, self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # calculus and structure ----------------------------------------------
    def diff(self, i: int, order: int = 1) -> "Polynomial":
        """Partial derivative ``d^order / dx_i^order``."""
        terms = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e < order:
                continue
            new = list(exps)
            new[i] = e - order
            terms[tuple(new)] = c * math.perm(e, order)
        return Polynomial(terms, self.nvars)

    def diff_multi(self, orders: Iterable[int]) -> "Polynomial":
        """Mixed partial derivative with per-variable ``orders``."""
        orders = tuple(orders)
        terms = {}
        for exps, c in self.terms.items():
            if any(e < o for e, o in zip(exps, orders)):
                continue
            factor = 1
            for e, o in zip(exps, orders):
                factor *= math.perm(e, o)
            terms[tuple(e - o for e, o in zip(exps, orders))] = c * factor
        return Polynomial(terms, self.nvars)

    def laplacian(self) -> "Polynomial":
        out = Polynomial.zero(self.nvars)
        for i in range(self.nvars):
            out = out + self.diff(i, 2)
        return out

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial({e: c for e, c in self.terms.items() if sum(e) == d}, self.nvars)

    def truncate(self, d: int) -> "Polynomial":
        """Drop all terms of total degree greater than ``d``."""
        return Polynomial({e: c for e, c in self.terms.items() if sum(e) <= d}, self.nvars)

    def coeff(self, exps: Iterable[int]) -> complex:
        return self.terms.get(tuple(exps), 0j)

    def norm(self) -> float:
        """Coefficient l2 norm in the monomial basis."""
        return math.sqrt(sum(abs(c) ** 2 for c in self.terms.values()))

    def isclose(self, other: "Polynomial", tol: float = 1e-10) -> bool:
        return (self - other).norm() <= tol

    def evaluate(self, point) -> complex:
        point = np.asarray(point, dtype=complex)
        return complex(sum(c * np.prod(point ** np.array(e)) for e, c in self.terms.items()))

    def substitute(self, images: list["Polynomial"]) -> "Polynomial":
        """Compose: replace ``x_i`` by ``images[i]`` (all in a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars
        out = Polynomial.zero(target)
        for exps, c in self.terms.items():
            term = Polynomial.constant(c, target)
            for img, e in zip(images, exps):
                if e:
                    term = term * img ** e
            out = out + term
        return out

    # serialization --------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"exps": list(e), "re": c.real, "im": c.imag}
                      for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Polynomial":
        terms = {tuple(t["exps"]): complex(t.get("re", 0.0), t.get("im", 0.0))
                 for t in data["terms"]}
        return cls(terms, int(data["nvars"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Polynomial":
        return cls.from_dict(json.loads(text))


def monomials_of_degree(nvars: int, d: int):
    """All exponent vectors with total degree exactly ``d``."""
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def monomials_upto(nvars: int, d: int):
    for k in range(d + 1):
        yield from monomials_of_degree(nvars, k)


class TorusFunction:
    """Finite Fourier sum ``sum f_{l1,l2} y_{l1,l2}`` with ``y_l = exp(i l.theta)``, ``l_i >= 0``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], complex] | None = None,
                 tol: float = ZERO_TOL):
        clean: dict = {}
        for idx, c in (terms or {}).items():
            idx = (int(idx[0]), int(idx[1]))
            if idx[0] < 0 or idx[1] < 0:
                raise ValueError(f"torus mode indices must be nonnegative, got {idx}")
            clean[idx] = clean.get(idx, 0) + complex(c)
        self.terms = _prune(clean, tol)

    @classmethod
    def mode(cls, l1: int, l2: int, c: complex = 1.0) -> "TorusFunction":
        return cls({(l1, l2): c})

    def __repr__(self):
        if not self.terms:
            return "TorusFunction(0)"
        return " + ".join(f"({c:.6g})*y{l}" for l, c in sorted(self.terms.items()))

    def __eq__(self, other):
        if not isinstance(other, TorusFunction):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, TorusFunction):
            return NotImplemented
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return TorusFunction(terms)

    def __neg__(self):
        return TorusFunction({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if np.isscalar(other):
            return TorusFunction({k: v * other for k, v in self.terms.items()})
        if not isinstance(other, TorusFunction):
            return NotImplemented
        terms: dict = {}
        for l, a in self.terms.items():
            for m, b in other.terms.items():
                key = (l[0] + m[0], l[1] + m[1])
                terms[key] = terms.get(key, 0) + a * b
        return TorusFunction(terms)

    __rmul__ = __mul__

    def norm(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self.terms.values()))

    def isclose(self, other: "TorusFunction", tol: float = 1e-10) -> bool:
        return (self - other).norm() <= tol

    def to_dict(self) -> dict:
        return {"terms": [{"index": list(l), "re": c.real, "im": c.imag}
                          for l, c in sorted(self.terms.items())]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "TorusFunction":
        return cls({tuple(t["index"]): complex(t.get("re", 0.0), t.get("im", 0.0))
                    for t in data["terms"]})

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "TorusFunction":
        return cls.from_dict(json.loads(text))


def random_torus_function(max_index: int, rng: np.random.Generator) -> TorusFunction:
    return TorusFunction({l: complex(rng.normal(), rng.normal())
                          for l in product(range(max_index + 1), repeat=2)})
