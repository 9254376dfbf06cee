# aerolos/config/settings.py

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

class Settings(BaseSettings):
    """
    Runtime knobs for the simulator, read from the environment or a .env file.

    Scenario physics (heights, densities, link budget) does not live here; it
    comes from the scenario file parsed by `aerolos.config.scenario_file`.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="AEROLOS_",
        case_sensitive=False,
        extra="ignore",
    )

    # --- Diagnostics ---
    log_level: str = Field("WARNING")

    # --- Monte Carlo defaults ---
    threads: int = Field(1, ge=1)
    realizations: int = Field(2000, ge=1)
    users_per_realization: int = Field(500, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)
    oracle_samples: int = Field(1_000_000, ge=10_000)

    # --- Output & search resolution ---
    float_digits: int = Field(9, ge=1, le=17)
    altitude_grid_step: float = Field(0.01, gt=0.0)

# --- Singleton Instance ---
settings = Settings()
