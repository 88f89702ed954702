from pydantic import BaseModel, ConfigDict, Field, field_validator

from schemas.common import VersionedRecord

MIN_FIT_POINTS = 4


class TlsParams(BaseModel):
    """Zero-temperature frequency f0 (Hz), loss tangent delta0 and filling factor."""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)
    f0: float = Field(gt=0)
    delta0: float = Field(ge=0)
    filling_factor: float = Field(1.0, gt=0, le=1)


class TemperaturePoint(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)
    temperature: float = Field(gt=0)
    f_r: float = Field(gt=0)
    sigma_f: float | None = Field(None, gt=0)


class TemperatureDataset(BaseModel):
    model_config = ConfigDict(frozen=True)
    label: str = ""
    points: list[TemperaturePoint] = Field(min_length=1)

    @field_validator("points")
    @classmethod
    def _increasing_temperature(cls, points: list[TemperaturePoint]) -> list[TemperaturePoint]:
        for index, (low, high) in enumerate(zip(points, points[1:]), start=2):
            if not high.temperature > low.temperature:
                raise ValueError(f"row {index}: temperatures must be strictly increasing")
        return points


class TlsResidual(BaseModel):
    temperature: float
    f_r: float
    f_fit: float
    residual: float


class LossTangentComparison(BaseModel):
    """Measured 1/Q_i against the TLS loss tangent at the same temperature and frequency."""
    label: str = ""
    temperature: float
    f_r: float
    predicted: float
    measured: float
    ratio: float


class TlsFitRecord(VersionedRecord):
    label: str = ""
    params: TlsParams
    f0_sigma: float
    delta0_sigma: float
    residual_rms: float
    evaluations: int
    base_frequency: float
    f0_relative_difference: float
    residuals: list[TlsResidual]
    comparisons: list[LossTangentComparison] = Field(default_factory=list)
