"""Configuration management for kummerlab."""
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="KUMMERLAB_",
        case_sensitive=True,
        extra="ignore",
    )

    # Tool metadata
    TOOL_NAME: str = "kummerlab"

    # Runtime
    WORKERS: int = 1
    LOG_LEVEL: str = "INFO"

    # Enumeration budgets
    ENUMERATION_BUDGET: int = 10_000_000
    CENSUS_BUDGET: int = 50_000_000
    DFT_DIRECT_LIMIT: int = 20_000

    # Exact-arithmetic thresholds
    EXACT_COMPARE_BITS: int = 4096
    LOG_PRECISION_BITS: int = 80
    MATERIALIZE_BITS: int = 100_000

    # Multiplier search and residue assembly
    SEARCH_BLOCK_SIZE: int = 1 << 20
    EXTRA_LEVELS: int = 8

    # Verification constants
    INTERVAL_SLACK: int = 1
    CENSUS_CAP_CONSTANT: int = 4

    # Characters
    LOG_TABLE_LIMIT: int = 2_000_000


settings = Settings()
