"""Command dispatch.

``run_command`` is the only place where library exceptions become exit codes:
0 success / equivalent, 1 not equivalent, 2 usage or validation error,
3 resource bound exceeded.
"""

import sys
import time
import uuid
from typing import Any

from .errors import AptcError
from .logs import get_logger
from .registry import get_command

LOGGER = get_logger("aptc_engine", "engine.log")

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _summary(args: Any) -> dict:
    try:
        return {k: (v if isinstance(v, (str, int, float, bool, type(None))) else str(type(v)))
                for k, v in vars(args).items() if k != "handler"}
    except TypeError:
        return {}


def run_command(name: str, args: Any) -> int:
    """Run a registered command and return its exit code."""
    cid = uuid.uuid4().hex
    LOGGER.info("cmd.received cid=%s command=%s args=%s", cid, name, _summary(args))

    handler = get_command(name)
    if not handler:
        LOGGER.info("cmd.no_command cid=%s command=%s", cid, name)
        print(f"error: unknown command '{name}'", file=sys.stderr)
        return EXIT_USAGE

    if args is not None and not hasattr(args, "cid"):
        try:
            setattr(args, "cid", cid)
        except AttributeError:
            pass

    start = time.time()
    try:
        code = handler(args)
        code = EXIT_OK if code is None else int(code)
        duration_ms = int((time.time() - start) * 1000)
        LOGGER.info("cmd.finished cid=%s command=%s duration_ms=%d exit=%d", cid, name, duration_ms, code)
        return code
    except AptcError as e:
        duration_ms = int((time.time() - start) * 1000)
        LOGGER.warning("cmd.failed cid=%s command=%s duration_ms=%d exit=%d error=%s",
                       cid, name, duration_ms, e.exit_code, e)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        duration_ms = int((time.time() - start) * 1000)
        LOGGER.exception("cmd.error cid=%s command=%s duration_ms=%d error=%s", cid, name, duration_ms, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
