from cathaul.catbundle.checks import Battery, check_CC, standard_battery
from cathaul.catbundle.connections import CatConnection, conn_lift_dec, conn_pushforward_dec, conn_standard
from cathaul.catbundle.morphisms import (DecMorphism, PPMorphism, dec_act, dec_compose, dec_distance,
                                         dec_identity, dec_source, dec_target, functor_Sdec, pp_act, pp_compose,
                                         pp_distance, pp_identity, pp_source, pp_target)
from cathaul.catbundle.pushforward import (BundleMorphismPair, conn_pushforward_general, identity_pair,
                                           pushforward_lift, sdec_pair, structure_group_pair, well_definedness)
from cathaul.catbundle.spaces import CategoricalBundle, DecoratedBundle, PairBundle

__all__ = [
    'PPMorphism', 'DecMorphism', 'pp_source', 'pp_target', 'pp_identity', 'pp_compose', 'pp_act', 'pp_distance',
    'dec_source', 'dec_target', 'dec_identity', 'dec_act', 'dec_compose', 'dec_distance', 'functor_Sdec',
    'CategoricalBundle', 'PairBundle', 'DecoratedBundle',
    'CatConnection', 'conn_standard', 'conn_lift_dec', 'conn_pushforward_dec',
    'BundleMorphismPair', 'identity_pair', 'sdec_pair', 'structure_group_pair', 'conn_pushforward_general',
    'pushforward_lift', 'well_definedness',
    'Battery', 'standard_battery', 'check_CC'
]
