"""
Configuration management for the dynamic vertex-sparsifier toolkit.
Handles environment variables and algorithm constants.
"""

import logging
import os

from dotenv import load_dotenv

# Load environment variables from .env file if it exists
load_dotenv()

logger = logging.getLogger(__name__)


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ("1", "true", "yes")


class Config:
    """Configuration class for the toolkit."""

    # Logging
    LOG_LEVEL: str = os.getenv("DYNSPARS_LOG_LEVEL", "WARNING")

    # r-division constants
    MIN_REGION_SIZE: int = int(os.getenv("DYNSPARS_MIN_REGION_SIZE", "4"))
    DIVISION_C1: float = float(os.getenv("DYNSPARS_DIVISION_C1", "4.0"))
    DIVISION_C2: float = float(os.getenv("DYNSPARS_DIVISION_C2", "8.0"))
    SEPARATOR_C: float = float(os.getenv("DYNSPARS_SEPARATOR_C", "4.0"))

    # Sparsification
    SAMPLING_CONSTANT: float = float(os.getenv("DYNSPARS_SAMPLING_CONSTANT", "4.0"))
    SPECTRAL_EXACT_LIMIT: int = int(os.getenv("DYNSPARS_SPECTRAL_EXACT_LIMIT", "600"))
    SPECTRAL_MAX_ROUNDS: int = int(os.getenv("DYNSPARS_SPECTRAL_MAX_ROUNDS", "3"))
    SPECTRAL_VERIFY_TRIALS: int = int(os.getenv("DYNSPARS_SPECTRAL_VERIFY_TRIALS", "100"))
    SPECTRAL_STRICT: bool = _env_bool("DYNSPARS_SPECTRAL_STRICT", "true")
    CUT_MAX_TERMINALS: int = int(os.getenv("DYNSPARS_CUT_MAX_TERMINALS", "10"))
    CUT_STRATEGY: str = os.getenv("DYNSPARS_CUT_STRATEGY", "contract-exact")

    # Dynamic structures
    REBUILD_CONSTANT: float = float(os.getenv("DYNSPARS_REBUILD_CONSTANT", "1.0"))

    # Linear solvers
    DIRECT_SOLVER_LIMIT: int = int(os.getenv("DYNSPARS_DIRECT_SOLVER_LIMIT", "2000"))
    SOLVER_RTOL: float = float(os.getenv("DYNSPARS_SOLVER_RTOL", "1e-10"))
    TOLERANCE: float = float(os.getenv("DYNSPARS_TOLERANCE", "1e-9"))

    # Defaults for the command line
    DEFAULT_EPS: float = float(os.getenv("DYNSPARS_DEFAULT_EPS", "0.3"))
    DEFAULT_SEED: int = int(os.getenv("DYNSPARS_DEFAULT_SEED", "0"))
    DEFAULT_SPANNER_Q: int = int(os.getenv("DYNSPARS_DEFAULT_SPANNER_Q", "1"))
    AUDIT: bool = _env_bool("DYNSPARS_AUDIT", "false")

    @classmethod
    def validate_config(cls) -> bool:
        """Validate that every constant lies in its admissible range."""
        checks = {
            "MIN_REGION_SIZE": cls.MIN_REGION_SIZE >= 2,
            "DIVISION_C1": cls.DIVISION_C1 > 0,
            "DIVISION_C2": cls.DIVISION_C2 > 0,
            "SEPARATOR_C": cls.SEPARATOR_C > 0,
            "SAMPLING_CONSTANT": cls.SAMPLING_CONSTANT > 0,
            "SPECTRAL_EXACT_LIMIT": cls.SPECTRAL_EXACT_LIMIT >= 1,
            "SPECTRAL_MAX_ROUNDS": cls.SPECTRAL_MAX_ROUNDS >= 1,
            "SPECTRAL_VERIFY_TRIALS": cls.SPECTRAL_VERIFY_TRIALS >= 1,
            "CUT_MAX_TERMINALS": 1 <= cls.CUT_MAX_TERMINALS <= 20,
            "CUT_STRATEGY": cls.CUT_STRATEGY in ("identity", "contract-exact"),
            "REBUILD_CONSTANT": cls.REBUILD_CONSTANT > 0,
            "DIRECT_SOLVER_LIMIT": cls.DIRECT_SOLVER_LIMIT >= 1,
            "SOLVER_RTOL": 0 < cls.SOLVER_RTOL < 1,
            "TOLERANCE": 0 < cls.TOLERANCE < 1,
            "DEFAULT_EPS": 0 < cls.DEFAULT_EPS < 1,
            "DEFAULT_SPANNER_Q": cls.DEFAULT_SPANNER_Q >= 1,
        }

        invalid = [name for name, ok in checks.items() if not ok]
        for name in invalid:
            logger.warning("Invalid configuration value %s=%r", name, getattr(cls, name))

        return not invalid


# Global config instance
config = Config()
