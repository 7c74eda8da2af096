"""``minimize``: quotient an LTS (or a spec's LTS) by strong or branching step bisimilarity."""

from ..core.registry import register_command
from ..equivalence.quotient import KINDS, quotient
from ..verifier import observable_lts
from . import (FORMATS, add_bound_arg, add_format_arg, add_param_args, emit, is_lts_file, load_lts, params_of,
               render_lts, resolve_spec)


def _arguments(parser):
    parser.add_argument("input", help="LTS JSON file, .aptc file or corpus id")
    parser.add_argument("--kind", choices=KINDS, default="branching", help="equivalence to quotient by")
    add_param_args(parser)
    add_bound_arg(parser)
    add_format_arg(parser, FORMATS)


@register_command("minimize", description="print the quotient of an LTS", configure=_arguments)
def minimize(args) -> int:
    if is_lts_file(args.input):
        source, name = load_lts(args.input), "lts"
    else:
        spec = resolve_spec(args.input, params_of(args))
        source, name = observable_lts(spec, args.bound), spec.name
    emit(render_lts(quotient(source, args.kind), args.format, name))
    return 0
