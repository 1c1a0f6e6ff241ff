"""Numerical rank and incremental orthonormal spans of matrices."""
from __future__ import annotations

import numpy as np

#: Relative singular-value cutoff for numerical rank.
RANK_RTOL = 1e-8


def numerical_rank(vectors, rtol: float = RANK_RTOL) -> int:
    """Rank of a stack of vectors (rows) with cutoff ``rtol * sigma_max``."""
    a = np.asarray(vectors, dtype=complex)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a.reshape(a.shape[0], -1), compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


class OrthoSpan:
    """Orthonormal basis of a growing subspace of C^n.

    Candidates are accepted when their component orthogonal to the current span
    exceeds ``rtol`` times the largest norm seen so far.
    """

    def __init__(self, n: int, rtol: float = RANK_RTOL):
        self.n = n
        self.rtol = rtol
        self.basis = np.zeros((0, n), dtype=complex)
        self._scale = 0.0

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def add(self, vectors) -> int:
        """Add candidates (rows); returns how many new directions were found."""
        v = np.asarray(vectors, dtype=complex).reshape(-1, self.n)
        if v.shape[0] == 0:
            return 0
        self._scale = max(self._scale, float(np.linalg.norm(v, axis=1).max()))
        if self._scale == 0:
            return 0
        # two rounds of projection keep the basis orthonormal to machine precision
        for _ in range(2):
            v = v - (v @ self.basis.conj().T) @ self.basis
        u, s, _ = np.linalg.svd(v.T, full_matrices=False)
        keep = s > self.rtol * self._scale
        keep &= np.arange(s.size) < self.n - self.dim
        new = u[:, keep].T
        if new.shape[0]:
            self.basis = np.vstack([self.basis, new])
        return int(new.shape[0])
