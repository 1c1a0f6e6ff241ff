"""Generated matrix algebras, kernels of the fuzzy-sphere maps, and separation of functions."""
from __future__ import annotations

import csv
import io
import json

import numpy as np

from .linalg import OrthoSpan, numerical_rank
from .polynomial import Polynomial
from .quantize import QuantizationMap, sphere_qmap
from .reps import check_matrix
from .sphere import harmonic_decompose, normal_form_basis


def generated_algebra_dim(gens: list[np.ndarray], max_word_len: int) -> int:
    """Dimension of span{Id, words in ``gens`` of length <= max_word_len}."""
    if not gens:
        raise ValueError("need at least one generator")
    if max_word_len < 1:
        raise ValueError("max_word_len must be >= 1")
    gens = [check_matrix(g) for g in gens]
    n = gens[0].shape[0]
    if any(g.shape != (n, n) for g in gens):
        raise ValueError("generators must share one dimension")
    span = OrthoSpan(n * n)
    span.add(np.eye(n, dtype=complex).ravel())
    frontier = [np.eye(n, dtype=complex)]
    for _ in range(max_word_len):
        if span.dim == n * n:
            break
        start = span.dim
        span.add(np.array([(g @ w).ravel() for w in frontier for g in gens]))
        if span.dim == start:
            break
        # new words are spanned by gens times the previous span; keep it orthonormal
        frontier = [b.reshape(n, n) for b in span.basis]
    return span.dim


def _map_matrix(q, basis_polys) -> np.ndarray:
    return np.array([q(p).ravel() for p in basis_polys])


def kernel_dim(k: int, d: int, q: QuantizationMap | None = None) -> int:
    """``dim(ker t_k ∩ P_{<=d})`` on the sphere quotient (normal-form basis).

    ``q`` overrides the default fuzzy-sphere map ``t_k``.
    """
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    q = sphere_qmap(k) if q is None else q
    basis = [Polynomial.monomial(e) for e in normal_form_basis(d)]
    return len(basis) - numerical_rank(_map_matrix(q, basis))


def kernel_dim_closed_form(k: int, d: int) -> int:
    return sum(2 * l + 1 for l in range(k, d + 1))


def kernel_chain_check(k_list, d: int, qmaps=None) -> tuple[bool, list[dict]]:
    """Kernel dimensions strictly decrease in ``k`` until they reach 0 (and stay there)."""
    k_list = list(k_list)
    if any(b <= a for a, b in zip(k_list, k_list[1:])):
        raise ValueError("k_list must be strictly increasing")
    rows = []
    for i, k in enumerate(k_list):
        q = None if qmaps is None else qmaps[i]
        rows.append({"k": k, "d": d, "dimension": kernel_dim(k, d, q)})
    dims = [r["dimension"] for r in rows]
    ok = all(b < a or a == b == 0 for a, b in zip(dims, dims[1:]))
    return ok, rows


def _sphere_image(f: Polynomial, k: int) -> np.ndarray:
    if k == 1:
        # t_1 keeps only the constant harmonic
        return np.array([[complex(harmonic_decompose(f)[0])]])
    return sphere_qmap(k)(f)


def separating_index(f: Polynomial, g: Polynomial, tol: float = 1e-10) -> int | None:
    """Smallest ``k`` with ``t_k(f) != t_k(g)``; ``None`` when ``f = g`` on the sphere."""
    diff = f - g
    tensors = harmonic_decompose(diff)
    scale = 1.0 + max(f.norm(), g.norm())
    if all(np.abs(t).max(initial=0.0) <= tol * scale for t in tensors):
        return None
    for k in range(1, len(tensors) + 1):
        if np.linalg.norm(_sphere_image(f, k) - _sphere_image(g, k)) > tol * scale:
            return k
    return None


def table_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def table_to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=1)
