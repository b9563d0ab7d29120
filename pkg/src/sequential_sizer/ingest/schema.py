"""Tabular data schema and its validation."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from ..core.models import ValidationResult
from ..utils.errors import InvalidConfigError
from .transforms import Transform

INTERCEPT_NAME = "(Intercept)"


@dataclass(frozen=True)
class DataSchema:
    """Which columns form the response, the predictors and the dummies."""
    response: str
    predictors: Tuple[str, ...] = ()
    dummies: Tuple[str, ...] = ()
    transforms: Dict[str, Transform] = field(default_factory=dict)
    intercept: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'predictors', tuple(self.predictors))
        object.__setattr__(self, 'dummies', tuple(self.dummies))
        object.__setattr__(self, 'transforms',
                           {name: Transform(t) for name, t in self.transforms.items()})

    @property
    def p(self) -> int:
        return int(self.intercept) + len(self.predictors) + len(self.dummies)

    @property
    def columns(self) -> Tuple[str, ...]:
        """Every file column the schema reads, response first."""
        return (self.response,) + self.predictors + self.dummies

    @property
    def coefficient_names(self) -> List[str]:
        names = [INTERCEPT_NAME] if self.intercept else []
        return names + list(self.predictors) + list(self.dummies)

    def transform_for(self, column: str) -> Transform:
        return self.transforms.get(column, Transform.IDENTITY)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            'response': self.response,
            'predictors': list(self.predictors),
            'dummies': list(self.dummies),
            'log_columns': sorted(name for name, t in self.transforms.items()
                                  if t is Transform.SHIFTED_LOG),
            'intercept': self.intercept
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'DataSchema':
        known = {'response', 'predictors', 'dummies', 'log_columns', 'intercept'}
        unknown = set(data) - known
        if unknown:
            name = sorted(unknown)[0]
            raise InvalidConfigError(f"schema.{name}", data[name], "unknown schema key")
        if 'response' not in data:
            raise InvalidConfigError("schema.response", None, "a response column is required")
        return cls(
            response=data['response'],
            predictors=tuple(data.get('predictors') or ()),
            dummies=tuple(data.get('dummies') or ()),
            transforms={name: Transform.SHIFTED_LOG for name in data.get('log_columns') or ()},
            intercept=bool(data.get('intercept', True))
        )


def validate_schema(schema: DataSchema) -> ValidationResult:
    """
    Check a schema before any file is opened.

    Args:
        schema: Schema to check

    Returns:
        ValidationResult with status and any warnings
    """
    columns = schema.columns
    seen = set()
    for name in columns:
        if not name or not name.strip():
            return ValidationResult(False, "column names must be non-empty")
        if name in seen:
            if name == schema.response:
                return ValidationResult(False, f"response {name!r} is also listed as a predictor")
            return ValidationResult(False, f"column {name!r} listed more than once")
        seen.add(name)

    if schema.p < 1:
        return ValidationResult(False, "model has no parameters: add predictors or an intercept")

    for name, transform in schema.transforms.items():
        if name not in seen:
            return ValidationResult(False, f"transform given for unknown column {name!r}")
        if name in schema.dummies and transform is not Transform.IDENTITY:
            return ValidationResult(False, f"dummy column {name!r} must be passed through untransformed")

    warnings = []
    if not schema.intercept:
        warnings.append("model without intercept: reported R^2 is not meaningful")
    return ValidationResult(True, warnings=warnings)
