from cathaul.bundle.connection import (BundlePath, BundlePoint, ConnectionForm, ShiftForm, TrivialBundle,
                                       connection_eval, vertical_vector)
from cathaul.bundle.fields import (CoefficientField, ConstantField, DerivedField, LinearField, SumField,
                                   TrigonometricField, ZeroField, field_from_descriptor)
from cathaul.bundle.integrators import integrate
from cathaul.bundle.transport import (horizontal_lift, horizontality_defect, horizontality_residual,
                                      parallel_transport, shifted_lift, shifted_transport)

__all__ = [
    'TrivialBundle', 'BundlePoint', 'BundlePath', 'ConnectionForm', 'ShiftForm', 'connection_eval',
    'vertical_vector', 'CoefficientField', 'ZeroField', 'ConstantField', 'LinearField',
    'TrigonometricField', 'SumField', 'DerivedField', 'field_from_descriptor', 'integrate',
    'horizontal_lift', 'parallel_transport', 'horizontality_residual', 'horizontality_defect',
    'shifted_transport', 'shifted_lift'
]
