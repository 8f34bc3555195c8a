from cathaul.algebra.catgroup import (CatGroupMorphism, GddMorphism, cg_compose, cg_distance, cg_identity,
                                     cg_inverse, cg_mul, cg_reverse, cg_source, cg_target,
                                     check_categorical_group, functor_S, gdd_as_pair, gdd_compose,
                                     gdd_distance, gdd_from_endpoints, gdd_from_pair, gdd_identity, gdd_mul)
from cathaul.algebra.crossed_module import (CrossedModule, inner_module, normal_subgroup_module,
                                            validate_crossed_module)
from cathaul.algebra.groups import FiniteGroup, Group, builtin_group, dihedral_group, symmetric_group

__all__ = [
    'Group', 'FiniteGroup', 'symmetric_group', 'dihedral_group', 'builtin_group',
    'CrossedModule', 'normal_subgroup_module', 'inner_module', 'validate_crossed_module',
    'CatGroupMorphism', 'GddMorphism', 'cg_source', 'cg_target', 'cg_identity', 'cg_compose', 'cg_mul',
    'cg_inverse', 'cg_reverse', 'cg_distance', 'gdd_from_endpoints', 'gdd_identity', 'gdd_as_pair',
    'gdd_from_pair', 'gdd_compose', 'gdd_mul', 'gdd_distance', 'functor_S', 'check_categorical_group'
]
