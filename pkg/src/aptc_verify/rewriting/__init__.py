from .axioms import AXIOMS, Axiom, AxiomId, get_axiom, parse_ids
from .cfar import cfar_collapse
from .rewriter import RewriteResult, normalize_basic, rewrite_step
from .soundness import AxiomReport, run_soundness_suite

__all__ = [
    "AXIOMS", "Axiom", "AxiomId", "AxiomReport", "RewriteResult", "cfar_collapse", "get_axiom",
    "normalize_basic", "parse_ids", "rewrite_step", "run_soundness_suite",
]
