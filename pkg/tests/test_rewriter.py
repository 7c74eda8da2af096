import os
import sys
import unittest

# make src/ available so tests can import the aptc_verify package when running
repo_root = os.path.dirname(os.path.dirname(__file__))
src_path = os.path.join(repo_root, "src")
if src_path not in sys.path:
    sys.path.insert(0, src_path)

from aptc_verify.algebra.actions import act
from aptc_verify.algebra.environment import Environment
from aptc_verify.algebra.recursion import RecursiveSpec
from aptc_verify.algebra.terms import (
    Alt, Atom, CommMerge, DELTA_T, Encaps, Par, Seq, TAU_T, Unless, Var, WholePar, fold,
)
from aptc_verify.core.errors import FuelExhaustedError
from aptc_verify.equivalence.checks import branching_step_bisim, rooted_branching_step_bisim, strong_step_bisim
from aptc_verify.rewriting.axioms import AxiomId, get_axiom, parse_ids
from aptc_verify.rewriting.cfar import cfar_collapse
from aptc_verify.rewriting.rewriter import normalize_basic, rewrite_step
from aptc_verify.rewriting.soundness import run_soundness_suite
from aptc_verify.semantics.lts import TICK, hide
from aptc_verify.semantics.sos import build_lts

a, b, c, d = act("a"), act("b"), act("c"), act("d")
PLAIN = Environment.create()


def chain(*labels):
    return fold(Seq, [Atom(x) for x in labels])


class RewriteStepTests(unittest.TestCase):
    def test_leftmost_innermost_redex(self):
        term = Seq(Atom(a), Seq(Seq(Atom(b), Atom(c)), Atom(d)))
        result = rewrite_step(term, PLAIN)
        self.assertEqual(result.axiom, AxiomId.A5)
        self.assertEqual(result.path, (1,))
        self.assertEqual(result.term, chain(a, b, c, d))
        self.assertEqual(result.to_dict()["axiom"], "A5")

    def test_fixpoint(self):
        self.assertIsNone(rewrite_step(chain(a, b), PLAIN))

    def test_rdp_only_on_request(self):
        ref = RecursiveSpec.of({"X": Seq(Atom(a), Var("X"))}).ref("X")
        self.assertIsNone(rewrite_step(ref, PLAIN))
        result = rewrite_step(ref, PLAIN, unfold_rdp=True)
        self.assertEqual(result.axiom, AxiomId.RDP)
        self.assertEqual(result.term, Seq(Atom(a), ref))


class NormalizeTests(unittest.TestCase):
    def test_batc_rules(self):
        self.assertEqual(normalize_basic(Alt(Atom(b), Atom(a)), PLAIN), Alt(Atom(a), Atom(b)))
        self.assertEqual(normalize_basic(Alt(Atom(a), DELTA_T), PLAIN), Atom(a))
        self.assertEqual(normalize_basic(Seq(DELTA_T, Atom(a)), PLAIN), DELTA_T)
        self.assertEqual(normalize_basic(Alt(Atom(a), Atom(a)), PLAIN), Atom(a))

    def test_prefix_is_sorted(self):
        self.assertEqual(normalize_basic(Par(Atom(b), Atom(a)), PLAIN), Par(Atom(a), Atom(b)))

    def test_communication_merge(self):
        env = Environment.create(gamma={(a, b): c})
        self.assertEqual(normalize_basic(CommMerge(Atom(a), Atom(b)), env), Atom(c))
        self.assertEqual(normalize_basic(CommMerge(Atom(a), Atom(d)), env), DELTA_T)

    def test_unless_without_conflicts(self):
        self.assertEqual(normalize_basic(Unless(Atom(a), Atom(b)), PLAIN), Atom(a))

    def test_branching_rules_are_opt_in(self):
        term = Seq(Atom(a), TAU_T)
        self.assertEqual(normalize_basic(term, PLAIN), term)
        self.assertEqual(normalize_basic(term, PLAIN, include_branching=True), Atom(a))

    def test_normal_form_keeps_the_step_semantics(self):
        env = Environment.create(gamma={(a, b): c})
        cases = [
            WholePar(chain(a, d), Atom(b)),
            Par(Alt(Atom(a), Atom(b)), chain(c, d)),
            Encaps(frozenset({a, b}), WholePar(Atom(a), Atom(b))),
            Seq(Alt(Atom(a), Atom(b)), Atom(d)),
        ]
        for term in cases:
            with self.subTest(term=term.text):
                normal = normalize_basic(term, env)
                verdict = strong_step_bisim(build_lts(term, env), build_lts(normal, env))
                self.assertTrue(verdict.equivalent)

    def test_trace_records_each_rule(self):
        trace = []
        normalize_basic(Seq(Seq(Atom(a), Atom(b)), Atom(c)), PLAIN, trace=trace)
        self.assertEqual(trace, [{"axiom": "A5", "path": []}])

    def test_fuel(self):
        term = Seq(Seq(Seq(Atom(a), Atom(b)), Atom(c)), Atom(d))
        with self.assertRaises(FuelExhaustedError):
            normalize_basic(term, PLAIN, fuel=1)


class CfarTests(unittest.TestCase):
    def setUp(self):
        self.i = act("i")

    def edges(self, lts):
        return {(s, l.key, t) for s, l, t in lts.transitions}

    def test_cluster_with_exit(self):
        spec = RecursiveSpec.of({
            "Y": Seq(Atom(act("e")), Var("X0")),
            "X0": Alt(Seq(Atom(self.i), Var("X1")), Atom(act("e"))),
            "X1": Seq(Atom(self.i), Var("X0")),
        })
        lts = build_lts(spec.ref("Y"), PLAIN)
        collapsed = cfar_collapse(lts, [self.i])
        self.assertEqual(collapsed.num_states, 2)
        self.assertEqual(self.edges(collapsed), {(0, "e", 1), (1, "e", TICK)})
        self.assertTrue(rooted_branching_step_bisim(hide(lts, [self.i]), collapsed).equivalent)

    def test_root_on_a_tau_cycle_keeps_its_own_state(self):
        spec = RecursiveSpec.of({
            "X0": Alt(Seq(Atom(self.i), Var("X1")), Atom(act("e"))),
            "X1": Seq(Atom(self.i), Var("X0")),
        })
        lts = build_lts(spec.ref("X0"), PLAIN)
        collapsed = cfar_collapse(lts, [self.i])
        self.assertEqual(collapsed.num_states, 2)
        self.assertEqual(self.edges(collapsed), {(0, "e", TICK), (0, "tau", 1), (1, "e", TICK)})
        self.assertTrue(rooted_branching_step_bisim(hide(lts, [self.i]), collapsed).equivalent)
        self.assertTrue(branching_step_bisim(hide(lts, [self.i]), collapsed).equivalent)

    def test_cluster_without_exit_diverges(self):
        spec = RecursiveSpec.of({"X": Seq(Atom(self.i), Var("X"))})
        collapsed = cfar_collapse(build_lts(spec.ref("X"), PLAIN), [self.i])
        self.assertEqual(collapsed.num_states, 2)
        self.assertEqual(self.edges(collapsed), {(0, "tau", 1)})
        self.assertEqual(collapsed.divergent, frozenset({1}))


class AxiomTests(unittest.TestCase):
    def test_parse_ids(self):
        self.assertEqual(parse_ids("A"), tuple(AxiomId("A%d" % i) for i in range(1, 8)))
        self.assertEqual(parse_ids("b1, SC3"), (AxiomId.B1, AxiomId.SC3))
        with self.assertRaises(ValueError):
            parse_ids("ZZ")

    def test_metadata(self):
        self.assertEqual(get_axiom("B1").kind, "rbs")
        self.assertEqual(get_axiom(AxiomId.A1).kind, "strong")
        self.assertIn("x + y", get_axiom("A1").to_dict()["equation"])

    def test_small_soundness_run(self):
        ids = [AxiomId.A1, AxiomId.A4, AxiomId.A6, AxiomId.P1, AxiomId.SC3, AxiomId.B1]
        reports = run_soundness_suite(seed=7, instances=3, ids=ids)
        self.assertEqual([r.axiom for r in reports], ids)
        for report in reports:
            with self.subTest(axiom=report.axiom.value):
                self.assertTrue(report.passed, report.failure)
                self.assertEqual(report.instances, 3)

    def test_seed_is_reproducible(self):
        first = [r.to_dict() for r in run_soundness_suite(seed=3, instances=2, ids=[AxiomId.A5])]
        second = [r.to_dict() for r in run_soundness_suite(seed=3, instances=2, ids=[AxiomId.A5])]
        self.assertEqual(first, second)


if __name__ == "__main__":
    unittest.main()
