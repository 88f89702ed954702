import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from schemas.common import VersionedRecord


class NotchParams(BaseModel):
    """Parameters of the notch-type transmission model.

    q_external is |Q_e|; phi rotates the circle about the off-resonant point;
    amplitude, alpha and delay describe the environment.
    """
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)
    f_r: float = Field(gt=0)
    q_loaded: float = Field(gt=0)
    q_external: float = Field(gt=0)
    phi: float = 0.0
    amplitude: float = Field(1.0, gt=0)
    alpha: float = 0.0
    delay: float = 0.0

    @model_validator(mode="after")
    def _internal_q_positive(self) -> "NotchParams":
        cos_phi = math.cos(self.phi)
        if cos_phi > 0 and self.q_loaded * cos_phi > self.q_external:
            raise ValueError("q_loaded must not exceed |q_external| / cos(phi)")
        return self

    @property
    def internal_loss(self) -> float:
        return 1.0 / self.q_loaded - math.cos(self.phi) / self.q_external

    @property
    def q_internal(self) -> float:
        loss = self.internal_loss
        return math.inf if loss == 0 else 1.0 / loss

    @property
    def linewidth(self) -> float:
        return self.f_r / self.q_loaded


class CircleGeometry(BaseModel):
    model_config = ConfigDict(frozen=True)
    center: complex
    radius: float = Field(gt=0)
    residual: float = Field(0.0, ge=0)


class PhaseFit(BaseModel):
    f_r: float
    q_loaded: float
    theta0: float
    covariance: list[list[float]]
    residual_rms: float
    evaluations: int

    @property
    def sigmas(self) -> tuple[float, float, float]:
        return tuple(math.sqrt(max(self.covariance[i][i], 0.0)) for i in range(3))


class NotchUncertainties(BaseModel):
    f_r: float = Field(ge=0)
    q_loaded: float = Field(ge=0)
    q_external: float = Field(ge=0)
    q_internal: float = Field(ge=0)
    phi: float = Field(ge=0)
    delay: float = Field(ge=0)


class PhotonMetrics(BaseModel):
    power_w: float
    mean_photon_number: float
    single_photon_power_w: float
    single_photon_power_dbm: float


class NotchFitResult(VersionedRecord):
    label: str = ""
    params: NotchParams
    q_internal: float
    tan_delta: float
    sigma: NotchUncertainties
    circle: CircleGeometry
    residual_norm: float
    window_linewidths: float
    power_dbm: float | None = None
    temperature_k: float | None = None
    photons: PhotonMetrics | None = None
    warnings: list[str] = Field(default_factory=list)


class AggregatedFit(BaseModel):
    label: str
    count: int
    power_dbm: float | None
    mean: dict[str, float]
    spread: dict[str, float]


class PowerSweepRow(BaseModel):
    power_dbm: float
    n_photon: float
    q_i: float
    q_i_sigma: float
    q_e: float
    q_e_sigma: float
    tan_delta: float
    q_l: float
    single_photon_power_dbm: float
    count: int


class PowerSweepRecord(VersionedRecord):
    label: str
    rows: list[PowerSweepRow]


class ResonatorSummaryRow(BaseModel):
    power_dbm: float
    mean_q_i: float
    std_q_i: float
    resonators: int


class ResonatorSummary(VersionedRecord):
    rows: list[ResonatorSummaryRow]
    low_power_q_i: float
    high_power_q_i: float
