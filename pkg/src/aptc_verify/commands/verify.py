"""``verify``: check one spec against its claimed external behaviour."""

import json

from ..core.engine import EXIT_NOT_EQUIVALENT, EXIT_OK
from ..core.registry import register_command
from ..verifier import verify as verify_spec
from . import add_bound_arg, add_format_arg, add_param_args, emit, params_of, resolve_spec


def _arguments(parser):
    parser.add_argument("spec", help="path to a .aptc file or a corpus id")
    add_param_args(parser)
    add_bound_arg(parser)
    add_format_arg(parser)
    parser.add_argument("--out", default=None, help="directory for LTS and report artifacts")


@register_command("verify", description="verify a spec against its claim", configure=_arguments)
def verify(args) -> int:
    spec = resolve_spec(args.spec, params_of(args))
    report = verify_spec(spec, args.bound, args.out, getattr(args, "cid", None))
    if args.format == "json":
        emit(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        emit(report.describe())
    return EXIT_OK if report.equivalent else EXIT_NOT_EQUIVALENT
