import os
import sys
import unittest

# make src/ available so tests can import the aptc_verify package when running
repo_root = os.path.dirname(os.path.dirname(__file__))
src_path = os.path.join(repo_root, "src")
if src_path not in sys.path:
    sys.path.insert(0, src_path)

from aptc_verify.algebra.actions import DELTA, PLAIN_SHADOW, TAU, ActionLabel, act, shadow
from aptc_verify.algebra.environment import Environment
from aptc_verify.algebra.recursion import RecursiveSpec, check_guarded_linear, lts_to_recursive_spec, unfold
from aptc_verify.algebra.terms import (
    Alt, Atom, DELTA_T, Encaps, Par, RecRef, Seq, Var, atoms, flatten, fold,
)
from aptc_verify.algebra.validation import validate
from aptc_verify.core.errors import LtsFormatError, UnknownVariableError
from aptc_verify.semantics.lts import TICK, StepLabel, StepLTS

a, b, c = act("a"), act("b"), act("c")


class ActionLabelTests(unittest.TestCase):
    def test_rendering(self):
        self.assertEqual(act("s_C", 1).text, "s_C(1)")
        self.assertEqual(shadow(a).text, "shadow(a)")
        self.assertEqual(shadow(act("r", 0), 2).text, "shadow(r(0),2)")
        self.assertEqual(TAU.text, "tau")
        self.assertEqual(DELTA.text, "delta")
        self.assertEqual(PLAIN_SHADOW.text, "shadow")

    def test_parse_inverts_text(self):
        for label in (act("s_C", 1), act("x"), shadow(act("r", 0), 2), shadow(a), TAU, DELTA, PLAIN_SHADOW):
            with self.subTest(label=label.text):
                self.assertEqual(ActionLabel.parse(label.text), label)

    def test_parse_rejects_garbage(self):
        with self.assertRaises(LtsFormatError):
            ActionLabel.parse("1abc")

    def test_kinds(self):
        self.assertTrue(a.is_ordinary)
        self.assertTrue(shadow(a).is_shadow)
        self.assertFalse(shadow(a).is_plain_shadow)
        self.assertTrue(PLAIN_SHADOW.is_plain_shadow)
        self.assertFalse(TAU.is_ordinary)

    def test_ordinary_action_needs_name(self):
        with self.assertRaises(ValueError):
            ActionLabel("act")

    def test_step_label_drops_tau_next_to_visible_events(self):
        label = StepLabel.of([b, TAU, a])
        self.assertEqual(label.key, "a,b")
        self.assertTrue(StepLabel.of([TAU, TAU]).is_tau)


class TermTests(unittest.TestCase):
    def test_rendering_is_parenthesised(self):
        t = Seq(Atom(a), Alt(Atom(b), Par(Atom(c), Atom(a))))
        self.assertEqual(t.text, "(a . (b + (c || a)))")
        self.assertEqual(Encaps(frozenset({b, a}), Atom(c)).text, "encap{a,b}(c)")

    def test_structural_equality_and_hash(self):
        self.assertEqual(Seq(Atom(a), Atom(b)), Seq(Atom(a), Atom(b)))
        self.assertEqual(len({Seq(Atom(a), Atom(b)), Seq(Atom(a), Atom(b))}), 1)

    def test_fold_and_flatten(self):
        t = fold(Alt, [Atom(a), Atom(b), Atom(c)])
        self.assertEqual(t, Alt(Atom(a), Alt(Atom(b), Atom(c))))
        self.assertEqual(flatten(t, Alt), [Atom(a), Atom(b), Atom(c)])
        self.assertEqual(fold(Alt, []), DELTA_T)

    def test_atoms(self):
        t = Seq(Atom(a), Par(Atom(b), Atom(a)))
        self.assertEqual(sorted(set(atoms(t))), [a, b])


class RecursionTests(unittest.TestCase):
    def test_unfold_closes_variables(self):
        spec = RecursiveSpec.of({"X": Seq(Atom(a), Var("X"))})
        self.assertEqual(unfold("X", spec), Seq(Atom(a), RecRef("X", spec)))

    def test_unknown_variable(self):
        spec = RecursiveSpec.of({"X": Atom(a)})
        with self.assertRaises(UnknownVariableError):
            spec.ref("Y")

    def test_guarded_linear(self):
        spec = RecursiveSpec.of({"X": Alt(Seq(Atom(a), Var("Y")), Atom(b)), "Y": Seq(Atom(c), Var("X"))})
        verdict = check_guarded_linear(spec)
        self.assertTrue(verdict.guarded)
        self.assertTrue(verdict.linear)

    def test_tau_prefix_does_not_guard(self):
        spec = RecursiveSpec.of({"X": Seq(Atom(TAU), Var("X"))})
        verdict = check_guarded_linear(spec)
        self.assertFalse(verdict.guarded)
        self.assertEqual(verdict.cycle, ("X",))

    def test_hidden_prefix_does_not_guard(self):
        spec = RecursiveSpec.of({"X": Seq(Atom(a), Var("X"))})
        self.assertTrue(check_guarded_linear(spec).guarded)
        self.assertFalse(check_guarded_linear(spec, silent=frozenset({a})).guarded)

    def test_nonlinear_summand_is_reported(self):
        spec = RecursiveSpec.of({"X": Seq(Var("X"), Atom(a)), "Y": Seq(Atom(a), Seq(Atom(b), Var("Y")))})
        verdict = check_guarded_linear(spec)
        self.assertFalse(verdict.linear)
        self.assertIn("Y", verdict.nonlinear)

    def test_lts_to_recursive_spec(self):
        lts = StepLTS(2, 0, ((0, StepLabel.of([a]), 1), (1, StepLabel.of([b, c]), TICK)))
        spec = lts_to_recursive_spec(lts)
        self.assertEqual(spec.names, ("X0", "X1"))
        self.assertEqual(spec.body("X0"), Seq(Atom(a), Var("X1")))
        self.assertEqual(spec.body("X1"), Par(Atom(b), Atom(c)))
        verdict = check_guarded_linear(spec)
        self.assertTrue(verdict.guarded and verdict.linear)


class ValidationTests(unittest.TestCase):
    def test_clean_term(self):
        env = Environment.create(gamma={(a, b): c})
        self.assertEqual(validate(Seq(Atom(a), Atom(b)), env), [])

    def test_one_sided_gamma_is_flagged(self):
        env = Environment.create(gamma={(a, b): c}, symmetric=False)
        messages = [d.message for d in validate(Atom(a), env)]
        self.assertTrue(any("asymmetric" in m for m in messages))

    def test_unbound_variable_and_bad_encap_set(self):
        env = Environment.create()
        diags = validate(Encaps(frozenset({TAU}), Var("Z")), env)
        messages = " ".join(d.message for d in diags)
        self.assertIn("unbound variable Z", messages)
        self.assertIn("tau not allowed in H", messages)

    def test_cyclic_causality(self):
        env = Environment.create(causality=[(a, b), (b, a)])
        self.assertTrue(any("cycle" in d.message for d in validate(Atom(a), env)))


if __name__ == "__main__":
    unittest.main()
