from cathaul.lie.crossed_modules import (alpha_star, so3_cover_module, su2_adjoint_module, tau_star,
                                        validate_algebra_maps)
from cathaul.lie.groups import (SO3, SU2, U1, MatrixLieGroup, VectorGroup, builtin_lie_group,
                                matrix_quaternion, quaternion_matrix)

__all__ = [
    'MatrixLieGroup', 'SU2', 'SO3', 'U1', 'VectorGroup', 'builtin_lie_group',
    'quaternion_matrix', 'matrix_quaternion',
    'su2_adjoint_module', 'so3_cover_module', 'tau_star', 'alpha_star', 'validate_algebra_maps'
]
