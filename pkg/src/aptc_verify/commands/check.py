"""``check``: decide an equivalence between two LTSs or specs."""

import json

from ..config import settings
from ..core.engine import EXIT_NOT_EQUIVALENT, EXIT_OK
from ..core.errors import Diagnostic, ValidationError
from ..core.registry import register_command
from ..equivalence.checks import check as check_equivalence
from ..verifier import observable_lts
from . import add_bound_arg, add_format_arg, add_param_args, emit, is_lts_file, load_lts, params_of, resolve_spec


def _kind(value: str) -> str:
    if value in ("step", "rbs", "branching"):
        return value
    if value.startswith("pomset:") and value[7:].isdigit():
        k, cap = int(value[7:]), settings().pomset_cap
        if not 1 <= k <= cap:
            raise ValidationError([Diagnostic("error", f"pomset size must be in 1..{cap}, got {k}")])
        return value
    raise ValidationError([Diagnostic("error", f"unknown kind {value!r}; use step, rbs, branching or pomset:K")])


def _arguments(parser):
    parser.add_argument("left", help="LTS JSON file, .aptc file or corpus id")
    parser.add_argument("right", help="LTS JSON file, .aptc file or corpus id")
    parser.add_argument("--kind", default="rbs", help="step | rbs | branching | pomset:K")
    add_param_args(parser)
    add_bound_arg(parser)
    add_format_arg(parser)


def _side(source: str, args):
    if is_lts_file(source):
        return load_lts(source)
    return observable_lts(resolve_spec(source, params_of(args)), args.bound)


@register_command("check", description="check two LTSs for equivalence", configure=_arguments)
def check(args) -> int:
    kind = _kind(args.kind)
    verdict = check_equivalence(_side(args.left, args), _side(args.right, args), kind)
    if args.format == "json":
        emit(json.dumps(verdict.to_dict(), indent=2, sort_keys=True))
    else:
        emit(f"{kind}: {'equivalent' if verdict.equivalent else 'NOT equivalent'}")
        if verdict.counterexample is not None:
            emit("  " + verdict.counterexample.describe())
    return EXIT_OK if verdict.equivalent else EXIT_NOT_EQUIVALENT
