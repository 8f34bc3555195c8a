from cathaul.gauge.checks import (InducedPushforward, gauge_check_axioms, gengauge_candidate,
                                  gengauge_transport_check, induced_pushforward_morphism)
from cathaul.gauge.forms import (ConstantGauge, DecorationForm, ExpLinearGauge, GaugeMap, IdentityGauge, ProductGauge,
                                 decoration_from_descriptor, gauge_from_descriptor)
from cathaul.gauge.transform import (CatGaugeTransform, compatible_decoration, compose_gauge, conn_decorated,
                                     decoration_label, decoration_ode, functorial_gauge, gauge_apply_morphism,
                                     gauge_apply_object, tau_star_matrix, transformed_connection)

__all__ = [
    'GaugeMap', 'IdentityGauge', 'ConstantGauge', 'ExpLinearGauge', 'ProductGauge', 'gauge_from_descriptor',
    'DecorationForm', 'decoration_from_descriptor',
    'CatGaugeTransform', 'decoration_ode', 'gauge_apply_object', 'decoration_label', 'gauge_apply_morphism',
    'transformed_connection', 'compose_gauge', 'tau_star_matrix', 'compatible_decoration', 'functorial_gauge',
    'conn_decorated',
    'gauge_check_axioms', 'gengauge_candidate', 'gengauge_transport_check', 'induced_pushforward_morphism',
    'InducedPushforward'
]
