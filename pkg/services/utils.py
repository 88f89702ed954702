import math
from collections.abc import Sequence

from services.exceptions import ConfigurationError, DomainError


def require_positive(**values: float) -> None:
    for name, value in values.items():
        if not (math.isfinite(value) and value > 0.0):
            raise DomainError(f"{name} must be a positive finite number, got {value!r}")


def require_same_length(**sequences: Sequence) -> None:
    lengths = {name: len(items) for name, items in sequences.items()}
    if len(set(lengths.values())) > 1:
        raise ConfigurationError(f"length mismatch: {lengths}")
