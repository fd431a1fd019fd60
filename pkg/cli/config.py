"""
Configuration management using environment variables
"""

import os
from dotenv import load_dotenv

# Load .env file
load_dotenv()


class Config:
    # Tolerances
    TOL = float(os.getenv("STARKONDO_TOL", "1e-9"))
    RESIDUAL_TOL = float(os.getenv("STARKONDO_RESIDUAL_TOL", "1e-12"))
    ROOT_TOL = float(os.getenv("STARKONDO_ROOT_TOL", "1e-10"))

    # Size guards, overridable with --force
    MAX_QUBITS = int(os.getenv("STARKONDO_MAX_QUBITS", "13"))
    ALGEBRA_MAX_L = int(os.getenv("STARKONDO_ALGEBRA_MAX_L", "5"))
    KONDO_MAX_L = int(os.getenv("STARKONDO_KONDO_MAX_L", "3"))
    COMPARE_MAX_L = int(os.getenv("STARKONDO_COMPARE_MAX_L", "4"))
    ROOTS_MAX_L = int(os.getenv("STARKONDO_ROOTS_MAX_L", "1000"))

    # Output
    OUTPUT_DIR = os.getenv("STARKONDO_OUTPUT_DIR", "data/processed")
    LOG_LEVEL = os.getenv("STARKONDO_LOG_LEVEL", "WARNING").upper()


config = Config()
