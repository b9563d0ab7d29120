"""Abstract interfaces for the sequential procedure."""

from abc import ABC, abstractmethod

from .models import ObservationBatch


class ObservationSource(ABC):
    """Abstract supplier of observations, delivered in a stable order."""

    @property
    @abstractmethod
    def p(self) -> int:
        """Number of predictor values per row."""
        pass

    @abstractmethod
    def draw(self, count: int) -> ObservationBatch:
        """
        Deliver the next count rows.

        Args:
            count: Number of rows wanted

        Returns:
            Batch of exactly count rows, none of them delivered before

        Raises:
            ExhaustedError: if fewer than count rows remain; the error
                carries the rows that were still available
        """
        pass


class VarianceTracker(ABC):
    """Abstract running estimate of the error variance."""

    @abstractmethod
    def absorb(self, rows: ObservationBatch) -> None:
        """Add rows to the internal state."""
        pass

    @abstractmethod
    def current_s2(self) -> float:
        """
        Current variance estimate.

        Raises:
            InsufficientDataError: fewer than p + 1 rows absorbed
            RankDeficientError: design not of full rank yet
        """
        pass
