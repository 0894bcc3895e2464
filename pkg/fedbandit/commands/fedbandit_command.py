from abc import ABC, abstractmethod
import sys

import numpy as np

from fedbandit.bandits import NegativeRadicandError
from fedbandit.costs import CostOverflowError
from fedbandit.environments import IngestError, ReplayEvaluationError
from fedbandit.experiment_spec import SpecError
from fedbandit.masking import MaskMismatchError
from fedbandit.shared.numerics import DimensionMismatchError, NotPositiveDefiniteError

USAGE_STATUS = 2
RUNTIME_STATUS = 1

# most specific first
ERROR_CODES = [
    (ReplayEvaluationError, "REPLAY_NO_MATCH", RUNTIME_STATUS),
    (IngestError, "INGEST", RUNTIME_STATUS),
    (CostOverflowError, "COST_OVERFLOW", RUNTIME_STATUS),
    (MaskMismatchError, "MASK_MISMATCH", RUNTIME_STATUS),
    (NegativeRadicandError, "NEGATIVE_RADICAND", RUNTIME_STATUS),
    (NotPositiveDefiniteError, "NOT_POSITIVE_DEFINITE", RUNTIME_STATUS),
    (DimensionMismatchError, "DIMENSION_MISMATCH", RUNTIME_STATUS),
    (np.linalg.LinAlgError, "LINALG", RUNTIME_STATUS),
    (OSError, "IO", RUNTIME_STATUS),
    (ValueError, "INVALID_VALUE", USAGE_STATUS),
]


class CommandFailed(Exception):
    """Raised by a command to exit with a one-line ``error[code]`` report."""

    def __init__(self, code, message, status=RUNTIME_STATUS):
        self.code = code
        self.status = status
        super().__init__(message)


def describe_error(e):
    """``(code, text, exit status)`` of an exception raised by a command."""
    if isinstance(e, CommandFailed):
        return e.code, str(e), e.status
    if isinstance(e, SpecError):
        return e.code, str(e), USAGE_STATUS
    for cls, code, status in ERROR_CODES:
        if isinstance(e, cls):
            return code, str(e), status
    return "INTERNAL", f"{type(e).__name__}: {e}", RUNTIME_STATUS


def fail(code, message, status):
    """Prints ``error[code] message`` as a single line on stderr and exits."""
    message = " ".join(str(message).split())
    sys.stderr.write(f"error[{code}] {message}\n")
    sys.exit(status)


class FedBanditCommand(ABC):
    @staticmethod
    @abstractmethod
    def register_subcommand(parser):
        raise NotImplementedError()

    @abstractmethod
    def run(self, args):
        raise NotImplementedError()
