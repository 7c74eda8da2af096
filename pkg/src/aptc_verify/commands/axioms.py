"""``axioms``: run the seeded axiom soundness suite."""

import json

from ..core.engine import EXIT_NOT_EQUIVALENT, EXIT_OK
from ..core.errors import Diagnostic, ValidationError
from ..core.registry import register_command
from ..rewriting.axioms import AxiomId
from ..rewriting.soundness import run_soundness_suite
from . import add_format_arg, emit


def _arguments(parser):
    parser.add_argument("--seed", type=int, default=None, help="random seed (default from settings)")
    parser.add_argument("--instances", type=int, default=None, help="random instances per axiom")
    parser.add_argument("--ids", default=None, help="comma separated axiom ids, e.g. A1,P1,SC1")
    add_format_arg(parser)


def _ids(text):
    if not text:
        return None
    try:
        return [AxiomId(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ValidationError([Diagnostic("error", f"unknown axiom id: {exc}")])


@register_command("axioms", description="check the axioms on random instances", configure=_arguments)
def axioms(args) -> int:
    reports = run_soundness_suite(args.seed, args.instances, _ids(args.ids))
    if args.format == "json":
        emit(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            line = f"{r.axiom.value:6} {r.kind:6} {r.instances:5} {'ok' if r.passed else 'FAIL'}"
            if r.failure:
                line += f"  instance {r.failure['instance']}: {r.failure['lhs']} = {r.failure['rhs']}"
            emit(line)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_NOT_EQUIVALENT
