"""In-memory observation source."""

from ..core.interfaces import ObservationSource
from ..core.models import ObservationBatch
from ..utils.errors import ExhaustedError


class ArraySource(ObservationSource):
    """Serves the rows of a batch in order."""

    def __init__(self, batch: ObservationBatch):
        self.batch = batch
        self.position = 0

    @property
    def p(self) -> int:
        return self.batch.p

    def draw(self, count: int) -> ObservationBatch:
        stop = self.position + count
        rows = self.batch[self.position:stop]
        self.position = min(stop, len(self.batch))
        if len(rows) < count:
            raise ExhaustedError(count, len(rows), rows)
        return rows
