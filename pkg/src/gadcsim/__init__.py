"""Two-qubit entanglement and steering under generalized amplitude damping.

Implements the noise channel, weak-measurement protection, unitary dilations
with their inverse-channel POVMs, and the concurrence and two-setting steering
measures used to compare protected and unprotected states.
"""

from .channels import (
    KrausChannel,
    SelectiveOutcome,
    amplitude_damping,
    apply_one_sided,
    apply_selective,
    gadc,
    identity_channel,
    reversal_operator,
    weak_detection_operator,
    weak_measurement_operator,
)
from .dilation import (
    UnitaryDilation,
    build_dilation,
    closed_form_inverse_one,
    closed_form_inverse_two,
    closed_form_unitary_one,
    closed_form_unitary_two,
    extract_kraus,
    inverse_channel_kraus,
    povm_elements,
)
from .errors import NullOutcomeError, NumericalError, SingularParameterError, ValidationError
from .measures import SteeringResult, concurrence, steering_value, steering_value_oracle
from .protocols import ProtocolResult, baseline, povm_case_one, povm_case_two, weak_protocol
from .states import (
    CorrelationData,
    QubitPairState,
    antiparallel_state,
    correlation_data,
    parallel_state,
)

__version__ = "0.1.0"
