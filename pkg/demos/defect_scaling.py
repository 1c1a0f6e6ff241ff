"""
Defect scaling
==============

Log-log fits of the quantization defect against hbar for sphere and torus pairs.
"""
from fuzzylimit import Polynomial, TorusFunction, sphere_qmap, torus_qmap
from fuzzylimit.limits import scaling_exponent

x1, x2, x3 = Polynomial.variables(3)
pairs = {
    "x1, x2": (x1, x2),
    "x1 x2, x2 x3": (x1 * x2, x2 * x3),
    "x1 x2, x1^2 - x2^2": (x1 * x2, x1 * x1 - x2 * x2),
    "x1 x2 x3, x1": (x1 * x2 * x3, x1),
}
for name, (f, g) in pairs.items():
    r = scaling_exponent(f, g, sphere_qmap, range(4, 41))
    slope = "-" if r.slope is None else f"{r.slope:.3f}"
    print(f"sphere  {name:22s} slope {slope:>6s}  {r.verdict}")

f, g = TorusFunction.mode(1, 0), TorusFunction.mode(0, 1)
for norm in ("fro", "normalized", "op"):
    r = scaling_exponent(f, g, torus_qmap, range(8, 65), norm=norm)
    print(f"torus   {norm:10s} slope {r.slope:.3f}")
