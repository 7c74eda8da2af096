"""End-to-end verification of a pattern against its claimed external behaviour.

Pipeline: build the LTS of ``encap_H(theta(system))``, prune it with the
causality constraints, hide I, collapse tau-clusters, and compare the result
with the claim's LTS under rooted branching step bisimilarity.
"""

import json
import os
import time
import uuid
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .algebra.environment import Environment
from .algebra.recursion import check_guarded_linear
from .algebra.terms import Abstract, ConflictElim, Encaps, Term
from .config import settings
from .core.errors import AptcError, Diagnostic, GuardednessError, ValidationError
from .core.logs import get_logger
from .dsl.model import CLAIM, PatternSpec
from .equivalence.checks import rooted_branching_step_bisim
from .equivalence.quotient import quotient
from .equivalence.verdict import EquivalenceVerdict
from .rewriting.cfar import cfar_collapse
from .semantics.lts import StepLTS, hide
from .semantics.sos import build_lts

LOGGER = get_logger("aptc_verifier", "verifier.log")


@dataclass
class VerificationReport:
    name: str
    params: Dict[str, int]
    states_raw: int = 0
    states_constrained: int = 0
    states_collapsed: int = 0
    states_quotient: int = 0
    claim_states: int = 0
    claim_linear: bool = True
    verdict: Optional[EquivalenceVerdict] = None
    expected: bool = True
    error: Optional[str] = None
    exit_code: int = 0
    timings_ms: Dict[str, int] = field(default_factory=dict)
    artifacts: Dict[str, str] = field(default_factory=dict)
    entry: Optional[str] = None

    @property
    def equivalent(self) -> bool:
        return self.verdict is not None and self.verdict.equivalent

    @property
    def passed(self) -> bool:
        return self.error is None and self.equivalent == self.expected

    def to_dict(self, timings: bool = True) -> Dict:
        data = {
            "name": self.name,
            "entry": self.entry,
            "params": dict(sorted(self.params.items())),
            "states": {
                "raw": self.states_raw,
                "constrained": self.states_constrained,
                "collapsed": self.states_collapsed,
                "quotient": self.states_quotient,
                "claim": self.claim_states,
            },
            "claim_linear": self.claim_linear,
            "equivalent": self.equivalent,
            "expected": self.expected,
            "passed": self.passed,
            "verdict": None if self.verdict is None else self.verdict.to_dict(),
            "error": self.error,
        }
        if timings:
            data["timings_ms"] = dict(self.timings_ms)
            data["artifacts"] = dict(self.artifacts)
        return data

    def describe(self) -> str:
        if self.error is not None:
            return f"{self.entry or self.name}: error: {self.error}"
        status = "equivalent" if self.equivalent else "NOT equivalent"
        line = (f"{self.entry or self.name} {self.params}: {status} "
                f"(states raw={self.states_raw} collapsed={self.states_collapsed} "
                f"quotient={self.states_quotient} claim={self.claim_states})")
        if self.verdict is not None and self.verdict.counterexample is not None:
            line += "\n  " + self.verdict.counterexample.describe()
        return line


def _body(spec: PatternSpec) -> Term:
    core = spec.system_term()
    if core is None:
        raise ValidationError([Diagnostic("error", f"spec {spec.name} has no system or process")])
    if spec.env.conflicts:
        core = ConflictElim(core)
    if spec.encapsulated:
        core = Encaps(spec.encapsulated, core)
    return core


def compose(spec: PatternSpec) -> Term:
    """tau_I(encap_H(theta(system))); operators with nothing to do are left out."""
    term = _body(spec)
    if spec.hidden:
        term = Abstract(spec.hidden, term)
    return term


def observable_lts(spec: PatternSpec, bound: Optional[int] = None, hidden: bool = True) -> StepLTS:
    """LTS of ``compose(spec)``: causality constraints applied before I is hidden."""
    bound = bound or settings().max_states
    constrained = build_lts(_body(spec), spec.env, bound, constraints=spec.env.causality)
    return hide(constrained, spec.hidden) if hidden else constrained


def _ms(start: float) -> int:
    return int((time.perf_counter() - start) * 1000)


def _write_artifacts(report: VerificationReport, out_dir: str, ltss: Dict[str, StepLTS]) -> None:
    os.makedirs(out_dir, exist_ok=True)
    stem = report.entry or report.name
    for kind, lts in ltss.items():
        path = os.path.join(out_dir, f"{stem}.{kind}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(lts.to_json() + "\n")
        report.artifacts[kind] = path
    path = os.path.join(out_dir, f"{stem}.report.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(timings=False), fh, indent=2, sort_keys=True)
        fh.write("\n")
    report.artifacts["report"] = path


def verify(spec: PatternSpec, bound: Optional[int] = None, out_dir: Optional[str] = None,
           cid: Optional[str] = None, entry: Optional[str] = None) -> VerificationReport:
    cid = cid or uuid.uuid4().hex
    bound = bound or settings().max_states
    started = time.perf_counter()
    LOGGER.info("verify.start cid=%s spec=%s params=%s bound=%d", cid, spec.name, spec.param_values, bound)
    if spec.claim is None:
        raise ValidationError([Diagnostic("error", f"spec {spec.name} has no claim to verify")])
    guard = check_guarded_linear(spec.processes)
    if not guard.guarded:
        raise GuardednessError(guard.cycle)
    claim_spec = spec.claim_spec()
    claim_guard = check_guarded_linear(claim_spec)
    if not claim_guard.guarded:
        raise GuardednessError(claim_guard.cycle)

    report = VerificationReport(spec.name, spec.param_values, claim_linear=claim_guard.linear, entry=entry)
    t = time.perf_counter()
    constrained = build_lts(_body(spec), spec.env, bound, constraints=spec.env.causality)
    report.timings_ms["lts"] = _ms(t)
    t = time.perf_counter()
    collapsed = cfar_collapse(constrained, spec.hidden)
    report.timings_ms["cfar"] = _ms(t)
    t = time.perf_counter()
    claim_lts = build_lts(claim_spec.ref(CLAIM), Environment(), bound)
    report.timings_ms["claim"] = _ms(t)
    t = time.perf_counter()
    report.verdict = rooted_branching_step_bisim(collapsed, claim_lts)
    report.states_quotient = quotient(collapsed, "branching").num_states
    report.timings_ms["check"] = _ms(t)
    report.states_raw = constrained.num_states
    report.states_constrained = constrained.num_states
    report.states_collapsed = collapsed.num_states
    report.claim_states = claim_lts.num_states
    report.timings_ms["total"] = _ms(started)
    if out_dir:
        _write_artifacts(report, out_dir, {"composed": constrained, "collapsed": collapsed, "claim": claim_lts})
    LOGGER.info("verify.done cid=%s spec=%s equivalent=%s states=%d ms=%d", cid, spec.name,
                report.equivalent, report.states_raw, report.timings_ms["total"])
    if not report.equivalent and report.verdict.counterexample is not None:
        LOGGER.info("verify.counterexample cid=%s spec=%s %s", cid, spec.name,
                    report.verdict.counterexample.describe())
    return report


def _verify_entry(entry_id: str, params: Optional[Dict[str, int]], bound: Optional[int],
                  out_dir: Optional[str], cid: str) -> VerificationReport:
    from . import corpus

    entry = corpus.get_entry(entry_id)
    merged = {**entry.params, **(params or {})}
    try:
        report = verify(corpus.load(entry_id, merged), bound, out_dir, cid, entry_id)
    except AptcError as exc:
        LOGGER.warning("verify.failed cid=%s entry=%s error=%s", cid, entry_id, exc)
        report = VerificationReport(entry_id, merged, error=str(exc), exit_code=exc.exit_code, entry=entry_id)
    report.expected = entry.expected
    return report


def verify_corpus(filter: str = "all", params: Optional[Dict[str, int]] = None, bound: Optional[int] = None,
                  jobs: Optional[int] = None, out_dir: Optional[str] = None) -> List[VerificationReport]:
    """Verify every selected corpus entry; reports come back in corpus order."""
    from . import corpus

    cid = uuid.uuid4().hex
    ids = [e.id for e in corpus.entries(filter)]
    jobs = jobs or settings().jobs
    started = time.perf_counter()
    LOGGER.info("corpus.start cid=%s filter=%s entries=%d jobs=%d", cid, filter, len(ids), jobs)
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_verify_entry, i, params, bound, out_dir, cid) for i in ids]
            reports = [f.result() for f in futures]
    else:
        reports = [_verify_entry(i, params, bound, out_dir, cid) for i in ids]
    LOGGER.info("corpus.done cid=%s passed=%d total=%d ms=%d", cid, sum(r.passed for r in reports),
                len(reports), _ms(started))
    return reports
