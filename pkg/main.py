"""
Main Entry Point
Configures logging and dispatches to the spectral-qsvt command line
"""

import sys
import logging
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from bench.cli import cli_dispatch
from utils.config import get_log_file, get_log_level

logging.basicConfig(
    level=getattr(logging, get_log_level(), logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.FileHandler(get_log_file()),
        logging.StreamHandler()
    ]
)
logger = logging.getLogger(__name__)


def main() -> int:
    """
    Run one subcommand and report how it went.

    Returns:
        int: Exit status
    """
    try:
        status = cli_dispatch(sys.argv[1:])
    except Exception as e:
        logger.error(f"spectral-qsvt failed: {e}")
        logger.exception("Full error traceback:")
        return 1
    if status != 0:
        logger.error(f"spectral-qsvt exited with status {status}")
    return status


if __name__ == "__main__":
    sys.exit(main())
