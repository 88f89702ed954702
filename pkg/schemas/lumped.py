from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.enums import InductanceSource
from schemas.common import VersionedRecord


class PpcSpec(BaseModel):
    """Parallel-plate capacitor: area (m^2), capacitance per area (F/m^2), dielectric thickness (m)."""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)
    area: float = Field(gt=0)
    c0: float = Field(gt=0)
    thickness: float = Field(42e-9, gt=0)


class LumpedModel(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)
    inductance: float = Field(gt=0)
    c_ppc: float = Field(gt=0)
    c_cpw: float = Field(gt=0)

    @property
    def c_total(self) -> float:
        return self.c_ppc + self.c_cpw

    @property
    def is_tadpole(self) -> bool:
        return self.c_cpw < self.c_ppc


class CalibrationRow(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)
    label: str | None = None
    area: float = Field(gt=0)
    f_meas: float = Field(gt=0)


class CalibrationDataset(BaseModel):
    model_config = ConfigDict(frozen=True)
    rows: list[CalibrationRow] = Field(min_length=2)

    @field_validator("rows")
    @classmethod
    def _distinct_areas(cls, rows: list[CalibrationRow]) -> list[CalibrationRow]:
        areas = [row.area for row in rows]
        if len(set(areas)) != len(areas):
            raise ValueError("calibration areas must be distinct")
        return rows


class LinearFitReport(BaseModel):
    """Total capacitance vs area with slope and intercept both free."""
    slope: float
    slope_sigma: float
    intercept: float
    intercept_sigma: float
    r_squared: float


class CalibrationResidual(BaseModel):
    label: str | None
    area: float
    f_meas: float
    f_fit: float
    c_total: float
    relative_residual: float
    c_cpw_ratio: float


class CalibrationRecord(VersionedRecord):
    c0: float
    c0_sigma: float
    inductance: float
    c_cpw: float
    residuals: list[CalibrationResidual]
    line_fit: LinearFitReport


class PredictionInput(BaseModel):
    model_config = ConfigDict(frozen=True)
    label: str | None = None
    model: LumpedModel
    total_length: float | None = Field(None, gt=0)
    eps_eff: float = Field(ge=1)


class PredictionRow(BaseModel):
    label: str | None
    f_pred: float
    f_meas: float | None
    relative_error_percent: float | None
    impedance: float
    size_ratio: float | None


class PredictionReport(VersionedRecord):
    rows: list[PredictionRow]


class DesignRecord(VersionedRecord):
    target_frequency: float
    area: float
    inductance: float
    inductance_source: InductanceSource
    analytic_inductance: float
    c0: float
    c_ppc: float
    c_cpw: float
    c_total: float
    frequency_check: float
    impedance: float
    total_length: float
    wavelength: float
    size_ratio: float
    notes: list[str] = Field(default_factory=list)
