"""
Messages and Ledger
====================

Every message of a simulated run goes through a :class:`MessageBus`,
which records its payload size in a :class:`Ledger`. Traffic between
participants (mask delivery and masked contexts) is kept apart from the
action/reward exchange with the environment.
"""

from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum

from .participants import ENVIRONMENT

ELEMENT_BYTES = 8
STAGES = ("stage1", "stage2", "stage3")


class MessageKind(Enum):
    MASK_SHARD = "MaskShardMsg"
    MASKED_CONTEXT = "MaskedContextMsg"
    ACTION = "ActionMsg"
    REWARD = "RewardMsg"


@dataclass(frozen=True)
class Message:
    kind: MessageKind
    sender: int
    receiver: int
    round: int
    elements: int

    def __post_init__(self):
        if self.elements < 0:
            raise ValueError(f"message payload cannot have {self.elements} elements")


class Ledger:
    """Element and operation counters of one run. All counters only grow."""

    def __init__(self, element_bytes=ELEMENT_BYTES):
        self.element_bytes = element_bytes
        self.elements_by_pair = defaultdict(int)
        self.messages_by_kind = Counter()
        self.ops_by_participant = defaultdict(int)
        self.ops_by_stage = dict.fromkeys(STAGES, 0)
        self.total_elements = 0
        self.environment_elements = 0

    def record(self, message):
        self.elements_by_pair[(message.sender, message.receiver)] += message.elements
        self.messages_by_kind[message.kind] += 1
        if ENVIRONMENT in (message.sender, message.receiver):
            self.environment_elements += message.elements
        else:
            self.total_elements += message.elements

    def charge(self, participant, ops, stage):
        """Adds ``ops`` unit operations performed by ``participant`` in ``stage``."""
        if ops < 0:
            raise ValueError(f"cannot charge {ops} operations")
        self.ops_by_participant[participant] += ops
        self.ops_by_stage[stage] += ops

    @property
    def total_bytes(self):
        return self.element_bytes * self.total_elements

    @property
    def environment_bytes(self):
        return self.element_bytes * self.environment_elements

    def bytes_sent(self, sender, receiver):
        return self.element_bytes * self.elements_by_pair.get((sender, receiver), 0)

    @property
    def total_ops(self):
        return sum(self.ops_by_stage.values())

    @property
    def num_messages(self):
        return sum(self.messages_by_kind.values())

    def summary(self):
        return {
            "total_elements": self.total_elements,
            "total_bytes": self.total_bytes,
            "environment_elements": self.environment_elements,
            "messages": self.num_messages,
            **{f"ops_{s}": self.ops_by_stage[s] for s in STAGES},
            "total_ops": self.total_ops,
        }


class MessageBus:
    """Synchronous in-process delivery: payloads wait in the receiver's
    inbox until it drains them."""

    def __init__(self, ledger=None):
        self.ledger = ledger if ledger is not None else Ledger()
        self._inboxes = defaultdict(list)

    def send(self, kind, sender, receiver, round, payload, elements):
        message = Message(kind, sender, receiver, round, int(elements))
        self.ledger.record(message)
        self._inboxes[receiver].append((message, payload))
        return message

    def drain(self, receiver, kind=None):
        """Removes and returns the receiver's pending ``(message, payload)``
        pairs, in send order, optionally only those of ``kind``."""
        inbox = self._inboxes[receiver]
        taken = [item for item in inbox if kind is None or item[0].kind == kind]
        self._inboxes[receiver] = [item for item in inbox if kind is not None and item[0].kind != kind]
        return taken

    def pending(self, receiver):
        return len(self._inboxes[receiver])
