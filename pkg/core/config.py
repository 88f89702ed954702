from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="TADPOLE_",
        case_sensitive=False,
        extra="ignore"
    )

    debug: bool = False
    log_level: str = "INFO"

    sentry_dsn: str = ""
    sentry_environment: str = "development"
    sentry_traces_sample_rate: float = 0.0

    # Геометрия по умолчанию (микрометры)
    width_um: float = 10.0
    gap_um: float = 6.0
    length_um: float = 2000.0
    eps_r: float = 11.9
    eps_eff: float | None = None
    dielectric_thickness_nm: float = 42.0
    c0_ff_per_um2: float = 1.39
    line_attenuation_db: float = 80.0

    fit_max_iterations: int = 200
    delay_edge_fraction: float = 0.1
    delay_grid_points: int = 81
    window_linewidths: float = 10.0
    min_window_linewidths: float = 5.0

    workers: int = 1


settings = Settings()
