"""Configuration management for radial-mfg."""

from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from platformdirs import user_data_dir
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables from .env file
load_dotenv()


class Settings(BaseSettings):
    """Process-level settings."""

    model_config = SettingsConfigDict(
        env_prefix="RADIAL_MFG_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Sweep parallelism (RADIAL_MFG_THREADS)
    threads: int = Field(default=1, ge=1, description="Maximum concurrent solves")

    # Logging Configuration
    log_level: str = Field(default="INFO", description="Log Level")
    log_format: str = Field(default="console", description="console or json")

    debug: bool = Field(default=False, description="Debug Mode")

    data_dir: Path = Field(
        default_factory=lambda: Path(user_data_dir("radial-mfg", "RadialMFG")),
        description="Data Directory",
    )

    def default_output_dir(self) -> Path:
        """Directory used by `run` when the scenario names none."""
        return self.data_dir / "results"


def get_settings() -> Settings:
    """Get application settings."""
    return Settings()


def ensure_output_directory(
    path: Optional[Path] = None, settings: Optional[Settings] = None
) -> Path:
    """Ensure the output directory exists and return it."""
    if path is None:
        if settings is None:
            settings = get_settings()
        path = settings.default_output_dir()

    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path
