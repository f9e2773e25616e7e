"""
Experiments - Main Entry Point
"""

import os
import sys
from pathlib import Path

from dotenv import load_dotenv

from experiments import cli, logging_handler

# Load environment variables
PROJECT_ROOT = Path(__file__).parent
load_dotenv(PROJECT_ROOT / ".env", override=True)


def main() -> int:
    # Setup logging
    LOG_DIR = PROJECT_ROOT / "logs"
    LOG_DIR.mkdir(exist_ok=True)

    EXPERIMENTS_LOG_FILE = LOG_DIR / "experiments.log"
    log_level = logging_handler.parse_level(os.getenv("SYMPLECTIC_LOG_LEVEL", "INFO"))
    logging_handler.setup_logging(EXPERIMENTS_LOG_FILE, log_level)

    return cli.main()


if __name__ == "__main__":
    sys.exit(main())
