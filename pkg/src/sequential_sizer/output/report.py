"""Machine-readable reports produced by the CLI commands."""

from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, ClassVar, Dict, Tuple

from .. import __version__


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec='seconds')


@dataclass(frozen=True)
class Report:
    """
    Outcome of one CLI command.

    ``config`` echoes every resolved setting (seed included) and ``result``
    holds the payload: an eta value, a study summary or a stopping result
    with its coefficient table. Both are plain JSON-compatible dicts so a
    report survives serialization unchanged.
    """
    command: str
    config: Dict[str, Any]
    result: Dict[str, Any]
    certified: bool = True
    version: str = __version__
    created_at: str = field(default_factory=_timestamp)

    COMMANDS: ClassVar[Tuple[str, ...]] = ('eta', 'simulate', 'run')

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            'command': self.command,
            'config': self.config,
            'result': self.result,
            'certified': self.certified,
            'provenance': {
                'version': self.version,
                'created_at': self.created_at
            }
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Report':
        provenance = data.get('provenance', {})
        return cls(
            command=data['command'],
            config=data['config'],
            result=data['result'],
            certified=data['certified'],
            version=provenance.get('version', __version__),
            created_at=provenance.get('created_at', '')
        )
