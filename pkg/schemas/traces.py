from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

MIN_TRACE_POINTS = 5


def find_trace_violation(frequencies: np.ndarray, samples: np.ndarray) -> tuple[int | None, str] | None:
    """First row (0-based) violating the trace invariants, or None when the trace is valid."""
    if frequencies.ndim != 1 or samples.ndim != 1:
        return None, "frequency grid and samples must be one-dimensional"
    if frequencies.size != samples.size:
        return None, f"{frequencies.size} frequencies but {samples.size} samples"
    if frequencies.size < MIN_TRACE_POINTS:
        return None, f"trace needs at least {MIN_TRACE_POINTS} points, got {frequencies.size}"
    checks = (
        (~np.isfinite(frequencies), "non-finite frequency"),
        (~(np.isfinite(samples.real) & np.isfinite(samples.imag)), "non-finite sample"),
        (np.concatenate(([False], ~(np.diff(frequencies) > 0))), "frequency grid is not strictly increasing"),
    )
    found = [(int(np.argmax(mask)), reason) for mask, reason in checks if mask.any()]
    if found:
        return min(found, key=lambda item: item[0])
    return None


class FrequencyTrace(BaseModel):
    """Complex transmission samples on a strictly increasing frequency grid (Hz)."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)
    frequencies: np.ndarray
    samples: np.ndarray
    power_dbm: float | None = None
    temperature_k: float | None = Field(None, gt=0)
    label: str = ""
    extra: dict[str, str] = Field(default_factory=dict)

    @field_validator("frequencies", mode="before")
    @classmethod
    def _as_float_array(cls, value: Any) -> np.ndarray:
        array = np.array(value, dtype=float)
        array.setflags(write=False)
        return array

    @field_validator("samples", mode="before")
    @classmethod
    def _as_complex_array(cls, value: Any) -> np.ndarray:
        array = np.array(value, dtype=complex)
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def _check_invariants(self) -> "FrequencyTrace":
        violation = find_trace_violation(self.frequencies, self.samples)
        if violation is not None:
            index, reason = violation
            location = "" if index is None else f"row {index + 1}: "
            raise ValueError(f"{location}{reason}")
        return self

    def __len__(self) -> int:
        return int(self.frequencies.size)

    @property
    def span(self) -> float:
        return float(self.frequencies[-1] - self.frequencies[0])

    def with_samples(self, samples: np.ndarray, **updates: Any) -> "FrequencyTrace":
        return FrequencyTrace(
            frequencies=self.frequencies,
            samples=samples,
            power_dbm=updates.get("power_dbm", self.power_dbm),
            temperature_k=updates.get("temperature_k", self.temperature_k),
            label=updates.get("label", self.label),
            extra=updates.get("extra", dict(self.extra)),
        )
