"""Toolkit configuration management."""
import logging
from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Defaults for the command-line tool, loaded from SCONES_* environment variables or .env."""

    model_config = SettingsConfigDict(env_prefix="SCONES_", env_file=".env", case_sensitive=False, extra="ignore")

    log_level: str = "INFO"

    # Network construction
    default_window: int = 20000

    # Data filtering
    default_maf: float = 0.1

    # Model selection
    default_folds: int = 10
    max_selected_frac: float = 0.01
    ridge_penalty: float = 1.0

    # Solver
    flow_solver: str = "dinic"
    flow_scale_bits: int = 20

    # Execution
    threads: int = 1
    output_dir: str = "runs"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


def configure_logging(level: str):
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
