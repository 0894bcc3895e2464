"""
Participant Roles
==================

Participant ``0`` is the active participant (AP), participants
``1..M-1`` are passive (PP). A third-party mask generator takes index
``M``; the environment (the user answering recommendations) is
:data:`ENVIRONMENT`.
"""

from dataclasses import dataclass
from enum import Enum

ACTIVE = 0
ENVIRONMENT = -1


class RoleKind(Enum):
    ACTIVE = "ActiveParticipant"
    PASSIVE = "PassiveParticipant"
    MASK_GENERATOR = "PrivacyMaskGenerator"


@dataclass(frozen=True)
class ParticipantRole:
    kind: RoleKind
    index: int
    local_dims: int = 0


def build_roles(partition, pmg_host=None):
    """Roles of every party in a run.

    Args:
        partition (:class:`~fedbandit.masking.DimPartition`): Local dimensions.
        pmg_host (:obj:`int`, `optional`):
            Index of the passive participant that also generates the mask;
            a separate third party when omitted.
    """
    roles = [ParticipantRole(RoleKind.ACTIVE, ACTIVE, partition.dims[0])]
    roles += [
        ParticipantRole(RoleKind.PASSIVE, j, partition.dims[j])
        for j in range(1, partition.num_participants)
    ]
    if pmg_host is None:
        roles.append(ParticipantRole(RoleKind.MASK_GENERATOR, partition.num_participants))
    else:
        if not 1 <= pmg_host < partition.num_participants:
            raise ValueError(f"mask generator host {pmg_host} is not a passive participant")
        roles.append(ParticipantRole(RoleKind.MASK_GENERATOR, pmg_host))
    return roles
