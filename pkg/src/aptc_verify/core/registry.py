"""Command registry and helpers.

This module stores registered CLI subcommands along with their metadata: a
short description and an optional ``configure(parser)`` hook that adds the
subcommand's arguments.

API highlights:
- register_command(name, description=None, configure=None, overwrite=False)
  -> decorator used by command modules to register handlers
- get_command(name) -> callable or None
- list_commands() -> dict of name -> metadata
"""

from typing import Callable, Dict, Optional

from .logs import get_logger

logger = get_logger("aptc_registry", "engine.log")

# name -> metadata dict; keys: func (callable), description (str), configure (callable or None)
COMMAND_REGISTRY: Dict[str, Dict] = {}


def register_command(name: str, *, description: Optional[str] = None,
                     configure: Optional[Callable] = None, overwrite: bool = False):
    """Decorator to register a subcommand handler.

    The handler receives the parsed ``argparse.Namespace`` and returns an exit code.

    Usage:
        @register_command('lts', description='build the LTS of a spec', configure=_arguments)
        def lts(args):
            ...
    """

    def decorator(func: Callable):
        if name in COMMAND_REGISTRY and not overwrite:
            msg = f"Command '{name}' is already registered. Use overwrite=True to replace."
            logger.error(msg)
            raise ValueError(msg)

        COMMAND_REGISTRY[name] = {
            "func": func,
            "description": description or "",
            "configure": configure,
        }
        logger.info("Registered command '%s'", name)
        return func

    return decorator


def get_command(name: str) -> Optional[Callable]:
    """Retrieve the handler for a command, or None."""
    meta = COMMAND_REGISTRY.get(name)
    return meta.get("func") if meta else None


def list_commands() -> Dict[str, Dict]:
    """Return a shallow copy of the registry (name -> metadata)."""
    return {k: v.copy() for k, v in COMMAND_REGISTRY.items()}

