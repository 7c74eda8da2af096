import os
import random
import sys
import unittest

# make src/ available so tests can import the aptc_verify package when running
repo_root = os.path.dirname(os.path.dirname(__file__))
src_path = os.path.join(repo_root, "src")
if src_path not in sys.path:
    sys.path.insert(0, src_path)

from aptc_verify.algebra.actions import TAU, act
from aptc_verify.algebra.environment import Environment
from aptc_verify.algebra.recursion import RecursiveSpec
from aptc_verify.algebra.terms import Alt, Atom, DELTA_T, Par, Seq, TAU_T, Var, WholePar, fold
from aptc_verify.core.errors import SizeCapError, ValidationError
from aptc_verify.equivalence.bruteforce import brute_force_bisim, check_witness
from aptc_verify.equivalence.checks import (
    branching_step_bisim, check, pomset_bisim_bounded, rooted_branching_step_bisim, strong_step_bisim,
)
from aptc_verify.equivalence.quotient import quotient
from aptc_verify.equivalence.verdict import replay
from aptc_verify.rewriting.soundness import random_term
from aptc_verify.semantics.lts import TICK
from aptc_verify.semantics.sos import build_lts

a, b, c = act("a"), act("b"), act("c")
PLAIN = Environment.create()


def lts_of(term):
    return build_lts(term, PLAIN)


def chain(*labels):
    return fold(Seq, [Atom(x) for x in labels])


class StrongStepTests(unittest.TestCase):
    def test_equal_terms(self):
        verdict = strong_step_bisim(lts_of(chain(a, b)), lts_of(chain(a, b)))
        self.assertTrue(verdict.equivalent)
        self.assertEqual(verdict.kind, "step")
        self.assertIn((0, 0), verdict.relation)

    def test_whole_parallel_expands_to_its_steps(self):
        left = WholePar(Atom(a), Atom(b))
        right = fold(Alt, [chain(a, b), chain(b, a), Par(Atom(a), Atom(b))])
        self.assertTrue(strong_step_bisim(lts_of(left), lts_of(right)).equivalent)

    def test_interleaving_is_not_a_joint_step(self):
        self.assertFalse(strong_step_bisim(lts_of(Par(Atom(a), Atom(b))),
                                           lts_of(Alt(chain(a, b), chain(b, a)))).equivalent)

    def test_counterexample_replays_on_one_side_only(self):
        l1, l2 = lts_of(chain(a, b)), lts_of(chain(a, c))
        verdict = strong_step_bisim(l1, l2)
        self.assertFalse(verdict.equivalent)
        cex = verdict.counterexample
        self.assertEqual(cex.kind, "refusal")
        self.assertEqual(cex.side, 0)
        self.assertTrue(replay(l1, cex.trace))
        self.assertFalse(replay(l2, cex.trace))
        self.assertIn("left executes", cex.describe())

    def test_deadlock_versus_termination(self):
        verdict = strong_step_bisim(lts_of(Atom(a)), lts_of(Seq(Atom(a), DELTA_T)))
        self.assertFalse(verdict.equivalent)
        self.assertEqual(verdict.counterexample.to_dict()["trace"][-1], "√")

    def test_recursion_unrolled(self):
        x = RecursiveSpec.of({"X": Seq(Atom(a), Var("X"))}).ref("X")
        y = RecursiveSpec.of({"Y": Seq(Atom(a), Seq(Atom(a), Var("Y")))}).ref("Y")
        self.assertTrue(strong_step_bisim(lts_of(x), lts_of(y)).equivalent)


class BranchingTests(unittest.TestCase):
    def test_inert_tau_is_ignored(self):
        verdict = rooted_branching_step_bisim(lts_of(chain(a, TAU, b)), lts_of(chain(a, b)))
        self.assertTrue(verdict.equivalent)
        self.assertEqual(verdict.kind, "rbs")

    def test_initial_tau_breaks_rootedness(self):
        l1, l2 = lts_of(chain(TAU, a)), lts_of(Atom(a))
        self.assertTrue(branching_step_bisim(l1, l2).equivalent)
        verdict = rooted_branching_step_bisim(l1, l2)
        self.assertFalse(verdict.equivalent)
        self.assertEqual(verdict.counterexample.kind, "root")

    def test_non_inert_tau_is_observable(self):
        left = Alt(Atom(a), Seq(Atom(TAU), Atom(b)))
        right = Alt(Atom(a), Atom(b))
        self.assertFalse(branching_step_bisim(lts_of(left), lts_of(right)).equivalent)

    def test_check_dispatch(self):
        l1, l2 = lts_of(chain(a, TAU, b)), lts_of(chain(a, b))
        self.assertFalse(check(l1, l2, "step").equivalent)
        self.assertTrue(check(l1, l2, "rbs").equivalent)
        self.assertTrue(check(l1, l2, "branching").equivalent)
        with self.assertRaises(ValueError):
            check(l1, l2, "trace")


class PomsetTests(unittest.TestCase):
    def test_bounded_pomset(self):
        left = WholePar(Atom(a), Atom(b))
        right = fold(Alt, [chain(a, b), chain(b, a), Par(Atom(a), Atom(b))])
        verdict = pomset_bisim_bounded(lts_of(left), lts_of(right), 2)
        self.assertTrue(verdict.equivalent)
        self.assertEqual(verdict.kind, "pomset:2")
        self.assertEqual(check(lts_of(left), lts_of(right), "pomset:2").kind, "pomset:2")

    def test_distinguishes_different_chains(self):
        self.assertFalse(pomset_bisim_bounded(lts_of(chain(a, b)), lts_of(chain(b, a)), 2).equivalent)

    def test_bounds(self):
        l1 = lts_of(Atom(a))
        with self.assertRaises(ValidationError):
            pomset_bisim_bounded(l1, l1, 0)
        with self.assertRaises(SizeCapError):
            pomset_bisim_bounded(l1, l1, 5, cap=3)


class QuotientTests(unittest.TestCase):
    def test_step_quotient_folds_a_loop(self):
        y = RecursiveSpec.of({"Y": Seq(Atom(a), Seq(Atom(a), Var("Y")))}).ref("Y")
        lts = lts_of(y)
        self.assertEqual(lts.num_states, 2)
        small = quotient(lts, "step")
        self.assertEqual(small.num_states, 1)
        self.assertTrue(strong_step_bisim(lts, small).equivalent)

    def test_branching_quotient_drops_inert_tau(self):
        lts = lts_of(chain(a, TAU, b))
        small = quotient(lts, "branching")
        self.assertEqual([(s, l.key, d) for s, l, d in small.transitions], [(0, "a", 1), (1, "b", TICK)])
        self.assertTrue(rooted_branching_step_bisim(lts, small).equivalent)

    def test_unknown_kind(self):
        with self.assertRaises(ValueError):
            quotient(lts_of(Atom(a)), "pomset")


class BruteForceTests(unittest.TestCase):
    def test_agrees_with_partition_refinement(self):
        cases = [
            (chain(a, TAU, b), chain(a, b)),
            (chain(TAU, a), Atom(a)),
            (WholePar(Atom(a), Atom(b)), Alt(chain(a, b), chain(b, a))),
            (Alt(Atom(a), Seq(Atom(TAU), Atom(b))), Alt(Atom(a), Atom(b))),
        ]
        for left, right in cases:
            l1, l2 = lts_of(left), lts_of(right)
            for kind in ("step", "rbs", "branching"):
                with self.subTest(left=left.text, right=right.text, kind=kind):
                    self.assertEqual(brute_force_bisim(l1, l2, kind).equivalent, check(l1, l2, kind).equivalent)

    def test_agrees_on_random_pairs(self):
        rng = random.Random(1709)
        verdicts = {kind: set() for kind in ("step", "rbs", "branching")}
        for i in range(500):
            left = random_term(rng)
            variant = i % 3
            if variant == 0:
                right = random_term(rng)
            elif variant == 1:
                right = Alt(left, left)
            else:
                right = Seq(TAU_T, left)
            l1, l2 = lts_of(left), lts_of(right)
            for kind in verdicts:
                with self.subTest(pair=i, kind=kind):
                    expected = brute_force_bisim(l1, l2, kind, cap=200).equivalent
                    self.assertEqual(check(l1, l2, kind).equivalent, expected, f"{left.text} vs {right.text}")
                    verdicts[kind].add(expected)
        for kind, seen in verdicts.items():
            self.assertEqual(seen, {True, False}, kind)

    def test_witness(self):
        l1, l2 = lts_of(chain(a, b)), lts_of(chain(a, b))
        verdict = strong_step_bisim(l1, l2)
        self.assertTrue(check_witness(l1, l2, verdict.relation, "step"))
        self.assertFalse(check_witness(l1, l2, {(0, 0)}, "step"))

    def test_size_cap(self):
        lts = lts_of(chain(a, b, c))
        with self.assertRaises(SizeCapError):
            brute_force_bisim(lts, lts, "step", cap=4)


if __name__ == "__main__":
    unittest.main()
