"""
Metric Class
=============
"""

from abc import ABC, abstractmethod


class Metric(ABC):
    """A metric computed over the results of one experiment cell."""

    @abstractmethod
    def calculate(self, results):
        """Computes the metric.

        Args:
            results: The per-seed results of one cell.
        """
        raise NotImplementedError
