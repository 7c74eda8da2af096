"""``corpus``: list or verify the bundled pattern corpus."""

import json

from .. import corpus as bundled
from ..core.engine import EXIT_NOT_EQUIVALENT, EXIT_OK
from ..core.registry import register_command
from ..verifier import verify_corpus
from . import add_bound_arg, add_format_arg, add_param_args, emit, params_of


def _arguments(parser):
    parser.add_argument("--filter", default="all", help="all | chapter=N | composition | mutant | id substring")
    parser.add_argument("--jobs", type=int, default=None, help="verify entries in parallel processes")
    parser.add_argument("--list", action="store_true", help="list the selected entries without verifying")
    parser.add_argument("--out", default=None, help="directory for LTS and report artifacts")
    add_param_args(parser)
    add_bound_arg(parser)
    add_format_arg(parser)


@register_command("corpus", description="verify the bundled corpus", configure=_arguments)
def corpus(args) -> int:
    if args.list:
        selected = bundled.entries(args.filter)
        if args.format == "json":
            emit(json.dumps([e.to_dict() for e in selected], indent=2, sort_keys=True))
        else:
            for e in selected:
                emit(f"{e.id:36} chapter {e.chapter}  expected={'equivalent' if e.expected else 'not equivalent'}")
        return EXIT_OK

    reports = verify_corpus(args.filter, params_of(args) or None, args.bound, args.jobs, args.out)
    if args.format == "json":
        emit(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            emit(("ok    " if r.passed else "FAIL  ") + r.describe())
        emit(f"{sum(r.passed for r in reports)}/{len(reports)} entries as expected")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_NOT_EQUIVALENT
