""".. _federation:

Federation: participants, the message ledger and the protocol runners.
========================================================================
"""

from .participants import ACTIVE, ENVIRONMENT, ParticipantRole, RoleKind, build_roles
from .ledger import ELEMENT_BYTES, Ledger, Message, MessageBus, MessageKind
from .run_result import RoundRecord, RunResult
from .protocol import (
    RUNNERS,
    make_environment,
    make_policy,
    partial_coordinates,
    run_centralized,
    run_partial,
    run_simulation,
    run_vfts,
    run_vfucb,
    selection_ops,
    update_ops,
)
from .masked_policy import MaskedPolicy
