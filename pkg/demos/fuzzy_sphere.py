"""
Fuzzy sphere
============

Polynomials on the unit sphere mapped to k x k matrices through the spin-(k-1)/2
representation of su(2).
"""
import numpy as np

from fuzzylimit import Polynomial, sphere_qmap, hbar_for_k, defect
from fuzzylimit.span import kernel_dim, separating_index

x1, x2, x3 = Polynomial.variables(3)

# hbar shrinks like 2/k
for k in (2, 3, 4, 10, 40):
    print(f"k={k:3d}  hbar={hbar_for_k(k):.5f}  2/k={2 / k:.5f}")

# the coordinates go to scaled angular momentum matrices
q = sphere_qmap(3)
print(np.round(q(x3), 4))

# x.x = 1 holds exactly in every matrix algebra
print(np.allclose(q(x1 * x1 + x2 * x2 + x3 * x3), np.eye(3)))

# the linear bracket is reproduced exactly, quadratic ones only up to higher order
for k in (5, 10, 20, 40):
    q = sphere_qmap(k)
    print(k, np.linalg.norm(defect(x1, x2, q)), np.linalg.norm(defect(x1 * x2, x2 * x3, q)))

# the k x k algebra forgets harmonics of degree >= k
print([kernel_dim(k, 4) for k in range(2, 7)])

# two different degree-3 harmonics first differ at k = 4
print(separating_index(x1 * x2 * x3, x1 * x1 * x2 - x2 * x3 * x3))
