"""aptc-verify CLI

Subcommands are discovered from the ``aptc_verify.commands`` package; each
module registers its handler with ``@register_command``.

Examples:
  python src/main.py verify src/aptc_verify/corpus/abp.aptc --delta 2
  python src/main.py corpus --filter chapter=7 --jobs 4
  python src/main.py check a.json b.json --kind step
"""

import argparse
import importlib
import pkgutil
import sys

from aptc_verify.core.engine import EXIT_USAGE, run_command
from aptc_verify.core.logs import get_logger
from aptc_verify.core.registry import list_commands

CLI_LOGGER = get_logger("aptc_cli", "cli.log")


def load_commands():
    """Auto-load all modules in the 'commands' package."""
    import aptc_verify.commands as commands_pkg
    for _, name, _ in pkgutil.iter_modules(commands_pkg.__path__):
        if not name.startswith("_"):
            importlib.import_module(f"aptc_verify.commands.{name}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aptc-verify",
                                     description="Verify process-algebra models of software patterns.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    for name, meta in sorted(list_commands().items()):
        child = sub.add_parser(name, help=meta["description"], description=meta["description"])
        if meta.get("configure"):
            meta["configure"](child)
    return parser


def main(argv=None) -> int:
    load_commands()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors
        return int(exc.code or 0)
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    CLI_LOGGER.info("command.start command=%s argv=%s", args.command, argv if argv is not None else sys.argv[1:])
    code = run_command(args.command, args)
    CLI_LOGGER.info("command.done command=%s exit=%d", args.command, code)
    return code


if __name__ == "__main__":
    sys.exit(main())
