import math
from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        populate_by_name=True,
    )

    # OpenAI-compatible chat completions
    openai_key: str = Field(default="", alias="COVERPATH_OPENAI_KEY")
    openai_url: str = Field(default="https://api.openai.com/v1", alias="COVERPATH_OPENAI_URL")
    openai_model: str = Field(default="gpt-4o", alias="COVERPATH_OPENAI_MODEL")

    # Google AI Studio (Gemini)
    gemini_key: str = Field(default="", alias="COVERPATH_GEMINI_KEY")
    gemini_url: str = Field(default="", alias="COVERPATH_GEMINI_URL")
    gemini_model: str = Field(default="gemini-1.5-flash", alias="COVERPATH_GEMINI_MODEL")

    # Anthropic messages API
    anthropic_key: str = Field(default="", alias="COVERPATH_ANTHROPIC_KEY")
    anthropic_url: str = Field(default="https://api.anthropic.com", alias="COVERPATH_ANTHROPIC_URL")
    anthropic_model: str = Field(default="claude-3-5-sonnet-20240620", alias="COVERPATH_ANTHROPIC_MODEL")

    # Transport
    request_timeout: float = Field(default=60.0, alias="COVERPATH_REQUEST_TIMEOUT")
    max_retries: int = Field(default=3, alias="COVERPATH_MAX_RETRIES")
    backoff_base: float = Field(default=1.0, alias="COVERPATH_BACKOFF_BASE")

    # Planner
    temperature: float = Field(default=0.6, alias="COVERPATH_TEMPERATURE")
    max_iterations: int = Field(default=5, alias="COVERPATH_MAX_ITERATIONS")
    min_coverage: float = Field(default=0.95, alias="COVERPATH_MIN_COVERAGE")
    max_length_ratio: float = Field(default=2.0, alias="COVERPATH_MAX_LENGTH_RATIO")
    feedback_on_reject: bool = Field(default=True, alias="COVERPATH_FEEDBACK_ON_REJECT")
    prompt_dir: str = Field(default="", alias="COVERPATH_PROMPT_DIR")

    # Simulator
    linear_speed: float = Field(default=0.5, alias="COVERPATH_LINEAR_SPEED")
    angular_speed: float = Field(default=math.pi / 2, alias="COVERPATH_ANGULAR_SPEED")
    sim_dt: float = Field(default=0.05, alias="COVERPATH_SIM_DT")
    safety_radius: float = Field(default=0.15, alias="COVERPATH_SAFETY_RADIUS")
    max_range: float = Field(default=5.0, alias="COVERPATH_MAX_RANGE")
    odometry_sigma_xy: float = Field(default=0.0, alias="COVERPATH_ODOMETRY_SIGMA_XY")
    odometry_sigma_heading: float = Field(default=0.0, alias="COVERPATH_ODOMETRY_SIGMA_HEADING")

    # Harness
    output_dir: str = Field(default="runs", alias="COVERPATH_OUTPUT_DIR")
    workers: int = Field(default=4, alias="COVERPATH_WORKERS")

    # App
    app_env: str = Field(default="development", alias="COVERPATH_APP_ENV")
    log_level: str = Field(default="INFO", alias="COVERPATH_LOG_LEVEL")
    max_experiments: int = Field(default=100, alias="COVERPATH_MAX_EXPERIMENTS")


@lru_cache()
def get_settings() -> Settings:
    """Cached settings instance."""
    return Settings()


settings = get_settings()
