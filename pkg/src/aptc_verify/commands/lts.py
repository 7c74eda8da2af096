"""``lts``: build the step LTS of a spec's composed term."""

from ..core.registry import register_command
from ..verifier import observable_lts
from . import FORMATS, add_bound_arg, add_format_arg, add_param_args, emit, params_of, render_lts, resolve_spec


def _arguments(parser):
    parser.add_argument("spec", help="path to a .aptc file or a corpus id")
    add_param_args(parser)
    add_bound_arg(parser)
    add_format_arg(parser, FORMATS)
    parser.add_argument("--no-hide", action="store_true", help="keep the actions of I visible")


@register_command("lts", description="build the step LTS of a spec", configure=_arguments)
def lts(args) -> int:
    spec = resolve_spec(args.spec, params_of(args))
    emit(render_lts(observable_lts(spec, args.bound, hidden=not args.no_hide), args.format, spec.name))
    return 0
