import os
import sys
import unittest

# make src/ available so tests can import the aptc_verify package when running
repo_root = os.path.dirname(os.path.dirname(__file__))
src_path = os.path.join(repo_root, "src")
if src_path not in sys.path:
    sys.path.insert(0, src_path)

from aptc_verify.algebra.actions import TAU, act, shadow
from aptc_verify.algebra.environment import Environment, StateSpec
from aptc_verify.algebra.recursion import RecursiveSpec
from aptc_verify.algebra.terms import (
    Abstract, Alt, Atom, ConflictElim, DELTA_T, Encaps, Par, Seq, StateOp, Var, WholePar,
)
from aptc_verify.core.errors import GuardednessError, LtsFormatError, StateBoundError, StateTableError
from aptc_verify.semantics.constraints import apply_async_constraints
from aptc_verify.semantics.lts import TICK, StepLabel, StepLTS, hide
from aptc_verify.semantics.sos import build_lts, step_outgoing

a, b, c = act("a"), act("b"), act("c")
PLAIN = Environment.create()


def edges(lts):
    return [(s, label.key, d) for s, label, d in lts.transitions]


class StepTests(unittest.TestCase):
    def test_sequence(self):
        lts = build_lts(Seq(Atom(a), Atom(b)), PLAIN)
        self.assertEqual(lts.num_states, 2)
        self.assertEqual(edges(lts), [(0, "a", 1), (1, "b", TICK)])

    def test_parallel_moves_jointly(self):
        lts = build_lts(Par(Atom(a), Atom(b)), PLAIN)
        self.assertEqual(edges(lts), [(0, "a,b", TICK)])

    def test_whole_parallel_interleaves_and_steps(self):
        lts = build_lts(WholePar(Atom(a), Atom(b)), PLAIN)
        self.assertEqual(lts.num_states, 3)
        self.assertEqual(sorted(key for s, key, _ in edges(lts) if s == 0), ["a", "a,b", "b"])

    def test_alternative(self):
        out = step_outgoing(Alt(Atom(a), Atom(b)), PLAIN)
        self.assertEqual([label.key for label, _ in out], ["a", "b"])

    def test_delta_has_no_steps(self):
        self.assertEqual(build_lts(DELTA_T, PLAIN).transitions, ())
        self.assertEqual(edges(build_lts(Alt(Atom(a), DELTA_T), PLAIN)), [(0, "a", TICK)])

    def test_abstraction_renames_to_tau(self):
        lts = build_lts(Abstract(frozenset({a}), Seq(Atom(a), Atom(b))), PLAIN)
        self.assertEqual(edges(lts), [(0, "tau", 1), (1, "b", TICK)])


class CommunicationTests(unittest.TestCase):
    def test_encapsulated_communication(self):
        env = Environment.create(gamma={(a, b): c})
        lts = build_lts(Encaps(frozenset({a, b}), WholePar(Atom(a), Atom(b))), env)
        self.assertEqual(edges(lts), [(0, "c", TICK)])

    def test_unencapsulated_keeps_solo_steps(self):
        env = Environment.create(gamma={(a, b): c})
        keys = {key for s, key, _ in edges(build_lts(WholePar(Atom(a), Atom(b)), env)) if s == 0}
        self.assertEqual(keys, {"a", "a,b", "b", "c"})


class ShadowTests(unittest.TestCase):
    def test_shadow_is_absorbed_by_its_event(self):
        lts = build_lts(WholePar(Atom(a), Atom(shadow(a))), PLAIN)
        self.assertEqual(edges(lts), [(0, "a", TICK)])

    def test_unmatched_shadow_is_blocked_at_the_root(self):
        lts = build_lts(Atom(shadow(a)), PLAIN)
        self.assertEqual(lts.transitions, ())

    def test_joint_bundle_with_mutual_shadows(self):
        left = Par(Atom(a), Atom(shadow(b)))
        right = Par(Atom(shadow(a)), Atom(b))
        lts = build_lts(WholePar(left, right), PLAIN)
        self.assertEqual(edges(lts), [(0, "a,b", TICK)])

    def test_shadow_keeps_the_channel_in_step(self):
        r_b, w_b, c_b = act("r_b"), act("w_b"), act("c_b")
        env = Environment.create(gamma={(r_b, w_b): c_b})
        system = WholePar(Seq(Atom(a), Atom(r_b)), Seq(Atom(shadow(a, 1)), Atom(w_b)))
        lts = build_lts(Encaps(frozenset({r_b, w_b}), system), env)
        self.assertEqual(edges(lts), [(0, "a", 1), (1, "c_b", TICK)])


class OperatorTests(unittest.TestCase):
    def test_state_operator_renames_and_moves(self):
        states = StateSpec(states=(0, 1), initial=0, actions=((0, a, c),), effects=((0, a, 1),))
        env = Environment.create(state_spec=states)
        lts = build_lts(StateOp(0, Seq(Atom(a), Atom(a))), env)
        self.assertEqual(edges(lts), [(0, "c", 1), (1, "a", TICK)])

    def test_state_operator_without_table(self):
        with self.assertRaises(StateTableError):
            build_lts(StateOp(0, Atom(a)), PLAIN)

    def test_races_split_joint_steps(self):
        env = Environment.create(races=[(a, b)], state_spec=StateSpec(states=(0,), initial=0))
        out = step_outgoing(StateOp(0, Par(Atom(a), Atom(b))), env)
        self.assertEqual(sorted(label.key for label, _ in out), ["a", "b"])

    def test_conflict_elimination_keeps_unrelated_alternatives(self):
        env = Environment.create(conflicts=[(a, c)])
        out = step_outgoing(ConflictElim(Alt(Atom(a), Atom(b))), env)
        self.assertEqual(sorted(label.key for label, _ in out), ["a", "b"])

    def test_unguarded_recursion(self):
        spec = RecursiveSpec.of({"X": Alt(Var("X"), Atom(a))})
        with self.assertRaises(GuardednessError):
            build_lts(spec.ref("X"), PLAIN)

    def test_tau_guarded_recursion_is_rejected(self):
        spec = RecursiveSpec.of({"X": Seq(Atom(TAU), Var("X"))})
        with self.assertRaises(GuardednessError):
            build_lts(spec.ref("X"), PLAIN)

    def test_guarded_loop_under_abstraction_is_accepted(self):
        spec = RecursiveSpec.of({"X": Seq(Atom(a), Var("X"))})
        lts = build_lts(Abstract(frozenset({a}), spec.ref("X")), PLAIN)
        self.assertEqual(edges(lts), [(0, "tau", 0)])

    def test_state_bound(self):
        spec = RecursiveSpec.of({"X": Seq(Atom(a), WholePar(Var("X"), Var("X")))})
        with self.assertRaises(StateBoundError):
            build_lts(spec.ref("X"), PLAIN, bound=10)


class ConstraintTests(unittest.TestCase):
    def test_receive_may_not_overtake_send(self):
        s, r = act("s"), act("r")
        lts = build_lts(WholePar(Atom(s), Atom(r)), PLAIN)
        pruned = apply_async_constraints(lts, [(s, r)])
        self.assertEqual(edges(pruned), [(0, "r,s", TICK), (0, "s", 1), (1, "r", TICK)])

    def test_untracked_constraint_is_a_no_op(self):
        lts = build_lts(Atom(a), PLAIN)
        self.assertIs(apply_async_constraints(lts, [(b, c)]), lts)

    def test_constraints_during_exploration_match_pruning_afterwards(self):
        s, r = act("s"), act("r")
        term = WholePar(Seq(Atom(s), Atom(a)), Seq(Atom(r), Atom(b)))
        after = apply_async_constraints(build_lts(term, PLAIN), [(s, r)])
        during = build_lts(term, PLAIN, constraints=[(s, r)])
        self.assertEqual(during, after)
        self.assertNotIn("r", [key for src, key, _ in edges(during) if src == 0])

    def test_unreceived_sends_saturate_at_the_channel_capacity(self):
        s, r = act("s"), act("r")
        loop = RecursiveSpec.of({"X": Seq(Atom(s), Var("X"))}).ref("X")
        lts = build_lts(WholePar(loop, Atom(r)), PLAIN, constraints=[(s, r)])
        self.assertEqual(lts.num_states, 6)
        self.assertNotIn("r", [key for src, key, _ in edges(lts) if src == 0])
        small = apply_async_constraints(build_lts(WholePar(loop, Atom(r)), PLAIN), [(s, r)], capacity=1)
        self.assertEqual(small.num_states, 4)


class LtsFormatTests(unittest.TestCase):
    def test_json_round_trip(self):
        lts = build_lts(WholePar(Atom(act("s_C", 1)), Atom(b)), PLAIN)
        self.assertEqual(StepLTS.from_json(lts.to_json()), lts)

    def test_bad_documents(self):
        with self.assertRaises(LtsFormatError):
            StepLTS.from_json("not json")
        with self.assertRaises(LtsFormatError):
            StepLTS.from_json('{"states": 1, "init": 0, "transitions": [[0, ["a"], 5]]}')

    def test_dot_and_text(self):
        lts = build_lts(Seq(Atom(a), Atom(b)), PLAIN)
        self.assertIn("digraph", lts.to_dot("x"))
        self.assertIn("0 --{a}--> 1", lts.to_text())

    def test_hide(self):
        lts = hide(build_lts(Par(Atom(a), Atom(b)), PLAIN), [a])
        self.assertEqual(edges(lts), [(0, "b", TICK)])
        only = hide(build_lts(Atom(a), PLAIN), [a])
        self.assertTrue(only.transitions[0][1].is_tau)
        self.assertEqual(StepLabel.of([TAU]).key, "tau")


if __name__ == "__main__":
    unittest.main()
