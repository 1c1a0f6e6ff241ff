"""Matrix generators: su(2) irreps, clock and shift matrices, user representation sets."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .poisson import StructureConstants


def check_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite square complex array."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def matrix_to_dict(m: np.ndarray) -> dict:
    m = check_matrix(m)
    return {"dim": m.shape[0],
            "entries": [[float(z.real), float(z.imag)] for z in m.ravel()]}


def matrix_from_dict(data) -> np.ndarray:
    dim = int(data["dim"])
    flat = np.array([complex(re, im) for re, im in data["entries"]])
    if flat.size != dim * dim:
        raise ValueError(f"expected {dim * dim} entries, got {flat.size}")
    return check_matrix(flat.reshape(dim, dim))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def su2_irrep(k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-(k-1)/2 generators with ``[J^a, J^b] = i eps^{abc} J^c``.

    ``J^3 = diag(j, ..., -j)``; ladder entries ``sqrt(j(j+1) - m(m+1))``.
    """
    if k < 2:
        raise ValueError(f"su(2) irreps are built for k >= 2, got {k}")
    j = (k - 1) / 2
    m = j - np.arange(k)
    jp = np.diag(np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1)), 1).astype(complex)
    jm = jp.conj().T
    return (jp + jm) / 2, (jp - jm) / 2j, np.diag(m).astype(complex)


def hbar_for_k(k: int) -> float:
    """Fuzzy-sphere deformation parameter ``2 / sqrt(k^2 - 1)``."""
    if k < 2:
        raise ValueError(f"hbar_k is defined for k >= 2, got {k}")
    return 2.0 / np.sqrt(k * k - 1.0)


def fuzzy_sphere_generators(k: int) -> list[np.ndarray]:
    """``X^a = hbar_k J^a``, normalized so that ``sum_a X^a X^a = 1``."""
    h = hbar_for_k(k)
    return [h * J for J in su2_irrep(k)]


def clock_shift(k: int) -> tuple[np.ndarray, np.ndarray, complex]:
    """Clock ``U = diag(q^0..q^{k-1})`` and cyclic shift ``V`` with ``VU = qUV``."""
    if k < 1:
        raise ValueError(f"clock and shift matrices need k >= 1, got {k}")
    q = np.exp(2j * np.pi / k)
    U = np.diag(q ** np.arange(k))
    V = np.roll(np.eye(k, dtype=complex), 1, axis=1)
    return U, V, complex(q)


def torus_generator(k: int, l1: int, l2: int) -> np.ndarray:
    """``Y_{l1,l2} = U^{l1} V^{l2}``."""
    if l1 < 0 or l2 < 0:
        raise ValueError("torus generator indices must be nonnegative")
    U, V, _ = clock_shift(k)
    return np.linalg.matrix_power(U, l1) @ np.linalg.matrix_power(V, l2)


def torus_prefactor(k: int, l, m) -> complex:
    """Scalar ``c`` in ``[Y_l, Y_m] = c Y_{l+m}``."""
    q = np.exp(2j * np.pi / k)
    return complex(q ** (l[1] * m[0]) - q ** (l[0] * m[1]))


@dataclass
class RepSet:
    """Generators ``e_i`` of a matrix Lie algebra with ``[e_i, e_j] = hbar f_ij^k e_k``."""

    generators: list[np.ndarray]
    hbar: complex
    structure: StructureConstants
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.generators = [check_matrix(g, f"generator {i}") for i, g in enumerate(self.generators)]
        dims = {g.shape[0] for g in self.generators}
        if len(dims) > 1:
            raise ValueError(f"generators have inconsistent dimensions {sorted(dims)}")
        if len(self.generators) != self.structure.dim:
            raise ValueError(f"{len(self.generators)} generators for a "
                             f"{self.structure.dim}-dimensional Lie algebra")

    @property
    def dim(self) -> int:
        return self.generators[0].shape[0]

    @classmethod
    def su2(cls, k: int, hbar: float | None = None, convention: str = "i") -> "RepSet":
        """Spin-(k-1)/2 representation scaled by ``hbar`` (default ``hbar_k``)."""
        h = hbar_for_k(k) if hbar is None else hbar
        J = su2_irrep(k)
        # f = i eps is realized by Hermitian J, f = eps by -i J
        factor = 1.0 if convention == "i" else -1j
        return cls([factor * h * j for j in J], h, StructureConstants.su2(convention),
                   label=f"su2-spin{(k - 1) / 2:g}")

    def to_dict(self) -> dict:
        h = complex(self.hbar)
        return {"label": self.label,
                "hbar": [h.real, h.imag],
                "structure": self.structure.to_dict(),
                "generators": [matrix_to_dict(g) for g in self.generators]}

    @classmethod
    def from_dict(cls, data) -> "RepSet":
        h = data["hbar"]
        h = complex(*h) if isinstance(h, (list, tuple)) else complex(h)
        return cls([matrix_from_dict(g) for g in data["generators"]], h,
                   StructureConstants.from_dict(data["structure"]), data.get("label", ""))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1))

    @classmethod
    def load(cls, path) -> "RepSet":
        return cls.from_dict(json.loads(Path(path).read_text()))


def validate_repset(r: RepSet) -> float:
    """Max over (i, j) of ``||[e_i, e_j] - hbar f_ij^k e_k||_F``."""
    e = r.generators
    f = r.structure.f
    worst = 0.0
    for i in range(len(e)):
        for j in range(i + 1, len(e)):
            rhs = sum(f[i, j, k] * e[k] for k in range(len(e)))
            worst = max(worst, float(np.linalg.norm(commutator(e[i], e[j]) - r.hbar * rhs)))
    return worst
