"""``parse``: validate a spec and print its canonical form or a summary."""

import json
import sys

from ..core.registry import register_command
from ..dsl import pretty_print
from . import add_format_arg, add_param_args, emit, params_of, resolve_spec


def _arguments(parser):
    parser.add_argument("spec", help="path to a .aptc file or a corpus id")
    add_param_args(parser)
    add_format_arg(parser)


@register_command("parse", description="validate a spec and print its canonical form", configure=_arguments)
def parse(args) -> int:
    spec = resolve_spec(args.spec, params_of(args))
    for warning in spec.warnings:
        print(warning.render(), file=sys.stderr)
    if args.format == "json":
        emit(json.dumps(spec.summary(), indent=2, sort_keys=True))
    else:
        emit(pretty_print(spec))
    return 0
