"""Quantum and geometric discord of spin pairs in the cyclic XX chain."""
from .measures import (DISCORD, LINEAR, VON_NEUMANN, ConsistencyError,
                       EntropyKind, Eigenstate, MeasureResult, PairState,
                       Phase, StateError, TwoQubitState, concurrence,
                       discord_at_angle, dominant_eigenstate, entropy,
                       geometric_discord_closed, geometric_discord_piecewise,
                       info_deficit_at_angle, measure_at_angle,
                       minimize_measure, pair_spectrum,
                       post_measurement_spectrum)
from .thermo import ThermoParams, correlators, pair_state_thermo
from .finite import (ChainSpec, DegenerateGroundStateError,
                     brute_force_pair_state, critical_fields,
                     pair_state_finite, projected_weights)
from .analysis import (FiniteContext, SweepRecord, ThermoContext,
                       TransitionRecord, eigenstate_crossing_field,
                       measurement_transition_field, phase_diagram, sweep,
                       w_state_discord)

__version__ = "0.1.0"
