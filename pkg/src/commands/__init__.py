"""
Command Module
Auto-discovers and imports all subcommands from this package.
"""
import argparse
import importlib
import logging
from pathlib import Path
from types import ModuleType
from typing import Callable, Dict, List, Tuple

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace], int]


def discover_commands() -> List[Tuple[str, ModuleType, dict]]:
    """
    Automatically discover all commands in the commands package.

    Returns:
        List of tuples: (module_name, module, command_config)
        A command module defines `register(subparsers)` and `handle(args)`.
    """
    commands = []
    current_dir = Path(__file__).parent

    # Get all Python files in commands directory
    for file_path in sorted(current_dir.glob("*.py")):
        # Skip __init__.py, base.py, and private files
        if file_path.stem in ["__init__", "base"] or file_path.stem.startswith("_"):
            continue

        module_name = file_path.stem

        try:
            module = importlib.import_module(f"commands.{module_name}")

            if callable(getattr(module, "register", None)) and callable(getattr(module, "handle", None)):
                config = {"help": module_name.replace("_", " ")}
                if hasattr(module, "COMMAND_CONFIG"):
                    config.update(module.COMMAND_CONFIG)

                commands.append((module_name, module, config))
                logger.debug(f"✓ Discovered command: {module_name}")

            else:
                logger.debug(f"Module {module_name} has no register/handle pair")

        except Exception as e:
            logger.error(f"✗ Failed to load command from {module_name}: {e}")

    return commands


def register_commands(parser: argparse.ArgumentParser) -> Dict[str, Handler]:
    """
    Register all discovered commands as subparsers.

    Args:
        parser: Top-level argument parser

    Returns:
        Mapping of subcommand name to its handler

    Example:
        parser = argparse.ArgumentParser()
        handlers = register_commands(parser)
        args = parser.parse_args()
        exit_code = handlers[args.command](args)
    """
    subparsers = parser.add_subparsers(dest="command", required=True)
    handlers: Dict[str, Handler] = {}

    for module_name, module, config in discover_commands():
        sub = module.register(subparsers)
        handlers[sub.prog.split()[-1]] = module.handle
        logger.debug(f"✓ Registered command: {module_name}")

    return handlers


__all__ = ["discover_commands", "register_commands"]
