"""Canonical forms on the sphere quotient ``C[x1, x2, x3] / (x.x - R)``.

Polynomials are reduced with the rewrite ``x3^2 -> R - x1^2 - x2^2`` and expanded in
completely symmetric trace-free tensors (spherical harmonics).
"""
from __future__ import annotations

import math
from itertools import permutations, product

import numpy as np

from .polynomial import Polynomial, monomials_upto


def _check3(p: Polynomial):
    if p.nvars != 3:
        raise ValueError(f"sphere polynomials have 3 variables, got {p.nvars}")


def sphere_normal_form(p: Polynomial, radius_sq: complex = 1.0) -> Polynomial:
    """Representative of ``p`` with x3-degree at most 1."""
    _check3(p)
    out: dict = {}
    pending = dict(p.terms)
    while pending:
        nxt: dict = {}
        for (a, b, c), coef in pending.items():
            if c < 2:
                out[(a, b, c)] = out.get((a, b, c), 0) + coef
                continue
            # x3^c = x3^(c-2) * (R - x1^2 - x2^2)
            for key, w in (((a, b, c - 2), radius_sq), ((a + 2, b, c - 2), -1.0),
                           ((a, b + 2, c - 2), -1.0)):
                nxt[key] = nxt.get(key, 0) + coef * w
        pending = nxt
    return Polynomial(out, 3)


def normal_form_basis(n: int) -> list[tuple[int, int, int]]:
    """Exponents of normal-form monomials of degree <= n; there are (n+1)^2 of them."""
    return [e for e in monomials_upto(3, n) if e[2] <= 1]


_R2 = Polynomial({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1}, 3)


def _harmonic_coeffs(m: int, n: int = 3) -> list[float]:
    # H = sum_j c_j r^{2j} Laplacian^j h is the harmonic part of a degree-m homogeneous h
    cs = [1.0]
    j = 0
    while 2 * (j + 1) <= m:
        cs.append(-cs[-1] / (2 * (j + 1) * (n + 2 * m - 4 - 2 * j)))
        j += 1
    return cs


def _homogeneous_to_tensor(h: Polynomial, m: int) -> np.ndarray:
    t = np.zeros((3,) * m, dtype=complex)
    for exps, c in h.terms.items():
        mult = math.factorial(m) // (math.factorial(exps[0]) * math.factorial(exps[1])
                                     * math.factorial(exps[2]))
        idx = (0,) * exps[0] + (1,) * exps[1] + (2,) * exps[2]
        val = c / mult
        for perm in set(permutations(idx)):
            t[perm] = val
    return t


def harmonic_decompose(p: Polynomial, radius_sq: complex = 1.0) -> list[np.ndarray]:
    """Trace-free symmetric tensors ``[f_0, f_a, f_ab, ...]`` with
    ``p = sum_l f_{a1..al} x^a1 ... x^al`` modulo ``x.x = radius_sq``.

    ``f_0`` is returned as a 0-d array. The list has length ``deg(p) + 1``
    (a single zero scalar for the zero polynomial).
    """
    _check3(p)
    top = max(p.degree, 0)
    buckets = [p.homogeneous_part(m) for m in range(top + 1)]
    harmonics: list[Polynomial] = [Polynomial.zero(3)] * (top + 1)
    for m in range(top, -1, -1):
        h = buckets[m]
        if not h:
            continue
        cs = _harmonic_coeffs(m)
        lap = h
        harm = h
        for j in range(1, len(cs)):
            lap = lap.laplacian()
            harm = harm + cs[j] * (_R2 ** j) * lap
            # on the sphere r^{2j} = R^j, so -c_j R^j Lap^j h moves down to degree m - 2j
            buckets[m - 2 * j] = buckets[m - 2 * j] - (cs[j] * radius_sq ** j) * lap
        harmonics[m] = harm
    return [_homogeneous_to_tensor(harmonics[m], m) for m in range(top + 1)]


def recompose(tensors: list[np.ndarray]) -> Polynomial:
    """Inverse of :func:`harmonic_decompose` (as an element of the polynomial ring)."""
    terms: dict = {}
    for t in tensors:
        t = np.asarray(t)
        m = t.ndim
        for idx in product(range(3), repeat=m):
            c = t[idx] if m else complex(t)
            if c == 0:
                continue
            exps = (idx.count(0), idx.count(1), idx.count(2))
            terms[exps] = terms.get(exps, 0) + c
    return Polynomial(terms, 3)


def tensor_trace(t: np.ndarray) -> np.ndarray:
    """Contraction of the first two indices (zero for trace-free tensors)."""
    return np.trace(t, axis1=0, axis2=1) if t.ndim >= 2 else np.zeros(())


def harmonic_dimension(l: int) -> int:
    return 2 * l + 1
