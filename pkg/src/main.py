import os
import sys
import logging
from typing import Optional, Sequence

from dotenv import load_dotenv

# Load environment
load_dotenv()

from src.cli import run  # noqa: E402


def configure_logging():
    """LOG_LEVEL sets the level (default INFO); DEBUG_MODE=true forces DEBUG"""
    level = os.getenv("LOG_LEVEL", "INFO").upper()
    if os.getenv("DEBUG_MODE", "false").lower() == "true":
        level = "DEBUG"
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


logger = logging.getLogger(__name__)


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    code = run(argv)
    logger.debug(f"Exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
