"""CLI subcommands; each module registers itself with ``@register_command``.

Shared argument and input helpers live here.
"""

import os
import sys
from typing import Dict, Optional

from ..core.errors import Diagnostic, LtsFormatError, ValidationError
from ..dsl import PatternSpec, parse_file
from ..semantics.lts import StepLTS

FORMATS = ("text", "json", "dot")


def add_param_args(parser) -> None:
    parser.add_argument("--n", type=int, default=None, help="value of parameter n")
    parser.add_argument("--delta", type=int, default=None, help="size of the data domain (parameter delta)")
    parser.add_argument("--param", action="append", default=[], metavar="NAME=VALUE",
                        help="override any declared parameter; may be repeated")


def add_bound_arg(parser) -> None:
    parser.add_argument("--bound", type=int, default=None, help="maximum number of states to explore")


def add_format_arg(parser, choices=FORMATS[:2]) -> None:
    parser.add_argument("--format", choices=choices, default="text", help="output format")


def params_of(args) -> Dict[str, int]:
    params: Dict[str, int] = {}
    for item in getattr(args, "param", None) or []:
        name, sep, value = item.partition("=")
        try:
            if not sep or not name.strip():
                raise ValueError(item)
            params[name.strip()] = int(value)
        except ValueError:
            raise ValidationError([Diagnostic("error", f"--param expects NAME=INT, got {item!r}")])
    if getattr(args, "n", None) is not None:
        params["n"] = args.n
    if getattr(args, "delta", None) is not None:
        params["delta"] = args.delta
    return params


def resolve_spec(source: str, params: Optional[Dict[str, int]] = None) -> PatternSpec:
    """Parse a ``.aptc`` path, or load a corpus entry when ``source`` names one instead."""
    if os.path.exists(source):
        return parse_file(source, params)
    from .. import corpus

    return corpus.load(source, params)


def load_lts(path: str) -> StepLTS:
    try:
        with open(path, encoding="utf-8") as fh:
            return StepLTS.from_json(fh.read())
    except OSError as exc:
        raise LtsFormatError(f"cannot read {path}: {exc.strerror}")


LTS_SUFFIXES = (".json", ".lts")


def is_lts_file(path: str) -> bool:
    """LTS documents end in .json or .lts, or are files that open with a JSON object."""
    if path.endswith(LTS_SUFFIXES):
        return True
    if not os.path.isfile(path):
        return False
    with open(path, encoding="utf-8", errors="replace") as fh:
        return fh.read(64).lstrip().startswith("{")


def emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def render_lts(lts: StepLTS, fmt: str, name: str = "lts") -> str:
    if fmt == "json":
        return lts.to_json()
    if fmt == "dot":
        return lts.to_dot(name)
    return lts.to_text()
