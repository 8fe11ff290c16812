"""
Command-Line Entry Point
Builds the parser from discovered commands and maps failures to exit codes.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

try:
    from settings import settings
except ModuleNotFoundError:  # pragma: no cover - fallback when executed directly
    sys.path.insert(0, str(Path(__file__).resolve().parent))
    from settings import settings

from dotenv import load_dotenv

load_dotenv()

from commands import register_commands  # noqa: E402
from core.exception import LatticeException  # noqa: E402
from log import RunLogContext  # noqa: E402

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.app_name,
        description="Discrete reductive perturbation toolkit for nonlinear lattice equations",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.app_version}")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and return its exit code.

    Exit codes: 0 success, 2 config error, 3 inadmissible or degenerate
    input, 4 numerical failure, 1 unexpected error.
    """
    parser = build_parser()
    handlers = register_commands(parser)
    args = parser.parse_args(argv)

    with RunLogContext(command=args.command) as context:
        logger.info(f"Starting {args.command} (run {context.run_id})")
        try:
            code = handlers[args.command](args)
        except LatticeException as e:
            logger.error(f"{args.command} failed [{type(e).__name__}]: {e}")
            return e.exit_code
        except Exception as e:
            logger.exception(f"{args.command} failed unexpectedly: {e}")
            return EXIT_INTERNAL
        logger.info(f"{args.command} finished")
        return code if code is not None else EXIT_OK


if __name__ == "__main__":  # pragma: no cover - convenience for local execution
    sys.exit(main())
