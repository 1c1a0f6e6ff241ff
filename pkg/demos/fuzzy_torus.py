"""
Fuzzy torus
===========

Clock and shift matrices, their braiding, and the Fourier modes of the torus.
"""
import numpy as np

from fuzzylimit import TorusFunction, clock_shift, torus_qmap, defect
from fuzzylimit.reps import torus_generator, torus_prefactor
from fuzzylimit.span import generated_algebra_dim

k = 5
U, V, q = clock_shift(k)
print(np.round(U, 3))
print(V.real.astype(int))

# VU = qUV and both are k-th roots of the identity
print(np.allclose(V @ U, q * U @ V),
      np.allclose(np.linalg.matrix_power(U, k), np.eye(k)),
      np.allclose(np.linalg.matrix_power(V, k), np.eye(k)))

# commutators of modes close on modes
Y10, Y01 = torus_generator(k, 1, 0), torus_generator(k, 0, 1)
print(np.allclose(Y10 @ Y01 - Y01 @ Y10, torus_prefactor(k, (1, 0), (0, 1)) * torus_generator(k, 1, 1)))

# U and V generate all k x k matrices
print(generated_algebra_dim([U, V], 2 * (k - 1)), k * k)

# defect per matrix entry falls like hbar^2 with hbar = 2/k
f, g = TorusFunction.mode(1, 0), TorusFunction.mode(0, 1)
for k in (8, 16, 32, 64):
    D = defect(f, g, torus_qmap(k))
    print(k, np.linalg.norm(D) / np.sqrt(k))
