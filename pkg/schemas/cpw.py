from pydantic import BaseModel, ConfigDict, Field


class CpwGeometry(BaseModel):
    """Coplanar waveguide strip, SI units."""
    model_config = ConfigDict(frozen=True, allow_inf_nan=False)
    width: float = Field(gt=0)
    gap: float = Field(gt=0)
    length: float = Field(gt=0)
    eps_r: float = Field(ge=1)
    eps_eff: float | None = Field(None, ge=1)

    @property
    def modulus(self) -> float:
        return self.width / (self.width + 2.0 * self.gap)

    @property
    def effective_permittivity(self) -> float:
        if self.eps_eff is not None:
            return self.eps_eff
        # quasi-static half-space value
        return (self.eps_r + 1.0) / 2.0


class TlineParams(BaseModel):
    model_config = ConfigDict(frozen=True)
    capacitance_per_length: float = Field(gt=0)
    inductance_per_length: float = Field(gt=0)
    eps_eff: float = Field(ge=1)
    impedance: float = Field(gt=0)
    phase_velocity: float = Field(gt=0)


class StripLC(BaseModel):
    model_config = ConfigDict(frozen=True)
    inductance: float = Field(gt=0)
    capacitance: float = Field(gt=0)
