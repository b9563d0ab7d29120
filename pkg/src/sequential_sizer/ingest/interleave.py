"""Round-robin composition of several observation sources."""

from typing import List, Sequence

from ..core.interfaces import ObservationSource
from ..core.models import ObservationBatch
from ..utils.errors import DimensionMismatchError, ExhaustedError, InvalidArgumentError


class InterleavedSource(ObservationSource):
    """
    Draws one row from each member per cycle, in the order given.

    Models k-per-period collection, e.g. two sellers recorded every day. The
    cycle position carries over between draws.
    """

    def __init__(self, sources: Sequence[ObservationSource]):
        if not sources:
            raise InvalidArgumentError("at least one source is required")
        p = sources[0].p
        for source in sources[1:]:
            if source.p != p:
                raise DimensionMismatchError(p, source.p)
        self.sources = list(sources)
        self._cursor = 0

    @property
    def p(self) -> int:
        return self.sources[0].p

    def draw(self, count: int) -> ObservationBatch:
        collected: List[ObservationBatch] = []
        for _ in range(count):
            source = self.sources[self._cursor % len(self.sources)]
            try:
                row = source.draw(1)
            except ExhaustedError:
                rows = ObservationBatch.concat(collected, self.p)
                raise ExhaustedError(count, len(rows), rows) from None
            collected.append(row)
            self._cursor += 1
        return ObservationBatch.concat(collected, self.p)


def interleave_sources(sources: Sequence[ObservationSource]) -> ObservationSource:
    """Combine sources round-robin; a single source is returned unchanged."""
    if len(sources) == 1:
        return sources[0]
    return InterleavedSource(sources)
