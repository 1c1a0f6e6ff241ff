"""Matrix regularizations of Poisson algebras and their classical limits.

Sparse polynomials with Poisson brackets, Moyal products, fuzzy spheres and tori,
symmetrized Lie quantizations, defect-scaling checks and an IKKT-type matrix model.
"""
from .polynomial import Polynomial, TorusFunction
from .poisson import PoissonStructure, StructureConstants, jacobi_defect, poisson_bracket
from .sphere import harmonic_decompose, sphere_normal_form
from .moyal import MoyalQuantization, MoyalSpec, intertwiner_apply, moyal_product
from .reps import RepSet, clock_shift, hbar_for_k, su2_irrep, torus_generator, validate_repset
from .quantize import (QuantizationMap, defect, direct_sum_qmap, lie_qmap, quantize_lie,
                       quantize_sphere, quantize_torus, rescale_qmap, sphere_qmap, symmetrize,
                       torus_qmap)
from .span import generated_algebra_dim, kernel_chain_check, kernel_dim, separating_index
from .limits import (ConeDescriptor, check_cone, equivalence_check, scaling_exponent,
                     strong_limit_falsifier)
from .matrix_model import (ModelConfig, action_gradient, action_value, eom_residual,
                           killing_metric, solve_matrix_model)
from .pipeline import PipelineReport, inverse_pipeline

__version__ = "0.1.0"
