"""
From su(2) back to the sphere
=============================

Solve the matrix model for several N, rebuild the quantization maps from the
solutions and read off the Poisson algebra they share.
"""
from fuzzylimit.pipeline import inverse_pipeline
from fuzzylimit.poisson import StructureConstants

su2 = StructureConstants.su2()

report = inverse_pipeline(su2, [2, 3, 4, 5])
for stage in report.stages:
    print(stage["stage"], stage["verdict"])
for row in report.stages[3]["table"]:
    print(row)
print(report.vertex["algebra"], report.vertex["relation"], report.vertex["nu"])

# Starting 1% away from the representations, N = 4, 5 come back, but at N = 3 the
# solver settles on a stationary point that is not a representation, and the
# run stops at stage 2.
report = inverse_pipeline(su2, [3, 4, 5], {"perturbation": 0.01, "seed": 0})
print(report.failed_stage)
for row in report.stages[1]["table"]:
    print(row)
