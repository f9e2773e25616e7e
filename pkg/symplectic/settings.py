"""
Settings Module
Library defaults, overridable from the project .env file
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file
PROJECT_ROOT = Path(__file__).resolve().parent.parent
load_dotenv(PROJECT_ROOT / ".env", override=True)

# Structured-identity, unit-circle and numerical-rank tolerances
TOL_STRUCT = float(os.getenv("SYMPLECTIC_TOL_STRUCT", "1e-10"))
TOL_CIRCLE = float(os.getenv("SYMPLECTIC_TOL_CIRCLE", "1e-8"))
TOL_RANK = float(os.getenv("SYMPLECTIC_TOL_RANK", "1e-10"))

# Matrizant integration
INTEGRATOR_RTOL = float(os.getenv("SYMPLECTIC_INTEGRATOR_RTOL", "1e-12"))
INTEGRATOR_ATOL = float(os.getenv("SYMPLECTIC_INTEGRATOR_ATOL", "1e-12"))
INTEGRATOR_METHOD = os.getenv("SYMPLECTIC_INTEGRATOR_METHOD", "DOP853")
RK4_STEPS_PER_PERIOD = int(os.getenv("SYMPLECTIC_RK4_STEPS", str(2 ** 14)))

# Psi curves and batch runs
PSI_GRID_POINTS = int(os.getenv("SYMPLECTIC_PSI_GRID", "400"))
CONCURRENCY = int(os.getenv("SYMPLECTIC_CONCURRENCY", "4"))

# Inverses above this condition estimate are logged as warnings
COND_WARN = 1e12
