"""
Configuration Management
Loads and validates configuration from environment variables
"""

import os
from dataclasses import dataclass, field
from typing import Optional

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class Config:
    """
    Runtime Configuration

    Only diagnostics and result-neutral defaults come from the environment;
    everything that changes a report is given on the command line.
    """

    # Logging
    log_level: str = field(default_factory=lambda: os.getenv("GRASS_LOG_LEVEL", "WARNING"))
    log_file: Optional[str] = field(default_factory=lambda: os.getenv("GRASS_LOG_FILE"))

    # Sweeps
    default_jobs: int = field(default_factory=lambda: int(os.getenv("GRASS_JOBS", "1")))
    enable_caching: bool = field(default_factory=lambda: os.getenv("GRASS_ENABLE_CACHING", "true").lower() == "true")

    # Certificates
    rewrite_budget_factor: int = field(default_factory=lambda: int(os.getenv("GRASS_REWRITE_BUDGET_FACTOR", "1")))

    # Guard against combinatorial blow-up
    max_n: int = field(default_factory=lambda: int(os.getenv("GRASS_MAX_N", "12")))

    def validate(self) -> bool:
        """
        Validate configuration

        Returns:
            True if valid, raises ValueError if invalid
        """
        if self.log_level.upper() not in LOG_LEVELS:
            raise ValueError(f"GRASS_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}")

        if self.default_jobs < 1:
            raise ValueError("GRASS_JOBS must be at least 1")

        if self.rewrite_budget_factor < 1:
            raise ValueError("GRASS_REWRITE_BUDGET_FACTOR must be at least 1")

        if self.max_n < 2 or self.max_n > 20:
            raise ValueError("GRASS_MAX_N must be between 2 and 20")

        return True

    def __post_init__(self):
        """Validate configuration after initialization"""
        self.validate()
