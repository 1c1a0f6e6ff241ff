"""
Moyal products on the plane
===========================

Exact star products for a general bilinear form H, and the map T that carries
the H-product onto the product of its antisymmetric part.
"""
import numpy as np

from fuzzylimit import Polynomial
from fuzzylimit.moyal import (MoyalSpec, associator_norm, intertwiner_apply, intertwiner_defect,
                              moyal_product)

x, y = Polynomial.variables(2)
rng = np.random.default_rng(0)

canon = MoyalSpec.star_p(1.0)
print(moyal_product(x, y, canon) - moyal_product(y, x, canon))

spec = MoyalSpec.random(rng)
print(spec.H)
print(spec.antisymmetric().H)

f, g, h = (Polynomial.random(2, 3, rng) for _ in range(3))
f, g, h = (p / p.norm() for p in (f, g, h))
print("associator", associator_norm(f, g, h, spec))
print("T(f*g) - T(f)*T(g)", intertwiner_defect(f, g, spec))

# T is invertible
back = intertwiner_apply(intertwiner_apply(f, spec), spec, inverse=True)
print((back - f).norm())
