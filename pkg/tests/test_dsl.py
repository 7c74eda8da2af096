import os
import sys
import unittest

# make src/ available so tests can import the aptc_verify package when running
repo_root = os.path.dirname(os.path.dirname(__file__))
src_path = os.path.join(repo_root, "src")
if src_path not in sys.path:
    sys.path.insert(0, src_path)

from aptc_verify.algebra.actions import act
from aptc_verify.algebra.terms import Alt, Atom, Seq, Var, flatten
from aptc_verify.core.errors import SpecSyntaxError, ValidationError
from aptc_verify.dsl import parse, parse_file, pretty_print

CORPUS = os.path.join(src_path, "aptc_verify", "corpus")

TINY = """\
// a one-place buffer
spec tiny;
param delta = 2 in 1..3;
domain Delta = values(delta);
act r_A(Delta), s_B(Delta), work;

proc P = r_A(?d) . work . s_B(d) . P;

hide {work};
system = P;
claim = sum d in Delta: r_A(d) . s_B(d) . CLAIM;
"""


def messages(exc):
    return " | ".join(d.message for d in exc.diagnostics)


class ParseTests(unittest.TestCase):
    def test_basic_file(self):
        spec = parse(TINY)
        self.assertEqual(spec.name, "tiny")
        self.assertEqual(spec.param_values, {"delta": 2})
        self.assertEqual(spec.delta, (1, 2))
        self.assertEqual(spec.hidden, frozenset({act("work")}))
        self.assertEqual(spec.system, Var("P"))
        self.assertIn(act("r_A", 2), spec.env.declared)
        self.assertEqual(spec.warnings, ())

    def test_input_variable_expands_to_a_sum(self):
        body = parse(TINY).processes.body("P")
        summands = flatten(body, Alt)
        self.assertEqual(len(summands), 2)
        self.assertEqual(summands[0].left, Atom(act("r_A", 1)))
        self.assertIsInstance(summands[0], Seq)

    def test_parameter_override(self):
        spec = parse(TINY, {"delta": 3})
        self.assertEqual(spec.delta, (1, 2, 3))
        self.assertEqual(len(flatten(spec.processes.body("P"), Alt)), 3)

    def test_undeclared_override_is_ignored(self):
        self.assertEqual(parse(TINY, {"n": 4}).param_values, {"delta": 2})

    def test_parameter_out_of_range(self):
        with self.assertRaises(ValidationError) as ctx:
            parse(TINY, {"delta": 9})
        self.assertIn("out of range", messages(ctx.exception))

    def test_claim_spec_and_system_term(self):
        spec = parse(TINY)
        self.assertEqual(spec.claim_spec().names, ("CLAIM",))
        self.assertEqual(spec.system_term().name, "P")

    def test_system_defaults_to_first_process(self):
        spec = parse("act a, b;\nproc Q = a . R;\nproc R = b . Q;\n")
        self.assertEqual(spec.system, Var("Q"))

    def test_summary(self):
        summary = parse(TINY).summary()
        self.assertEqual(summary["name"], "tiny")
        self.assertEqual(summary["I"], ["work"])
        self.assertTrue(summary["claim"])


class DiagnosticTests(unittest.TestCase):
    def test_syntax_error_has_position(self):
        with self.assertRaises(SpecSyntaxError) as ctx:
            parse("act a;\nproc P = a . ;\n")
        self.assertEqual(ctx.exception.line, 2)
        self.assertIsNotNone(ctx.exception.column)
        self.assertTrue(str(ctx.exception).startswith("2:"))

    def test_unknown_identifier(self):
        with self.assertRaises(ValidationError) as ctx:
            parse("act a;\nproc P = a . b . P;\n")
        self.assertIn("unknown identifier b", messages(ctx.exception))
        self.assertEqual(ctx.exception.diagnostics[0].line, 2)

    def test_claim_may_not_use_hidden_actions(self):
        text = TINY.replace("claim = sum d in Delta: r_A(d) . s_B(d) . CLAIM;", "claim = work . CLAIM;")
        with self.assertRaises(ValidationError) as ctx:
            parse(text)
        self.assertIn("claim uses hidden actions", messages(ctx.exception))

    def test_one_sided_gamma_is_a_warning(self):
        spec = parse("act a, b, c;\ngamma(a, b) = c;\nencap {a, b};\nproc P = a & b;\n")
        self.assertEqual(len(spec.warnings), 1)
        self.assertIn("one direction only", spec.warnings[0].message)
        self.assertEqual(spec.env.communicate(act("b"), act("a")), act("c"))

    def test_value_outside_domain(self):
        text = TINY.replace("s_B(d) . P", "s_B(d + 5) . P")
        with self.assertRaises(ValidationError) as ctx:
            parse(text)
        self.assertIn("outside domain", messages(ctx.exception))


class PrinterTests(unittest.TestCase):
    def test_round_trip(self):
        spec = parse(TINY)
        again = parse(pretty_print(spec))
        self.assertEqual(again, spec)

    def test_corpus_round_trip(self):
        for name in ("singleton.aptc", "abp-shadow.aptc"):
            with self.subTest(file=name):
                spec = parse_file(os.path.join(CORPUS, name))
                self.assertEqual(parse(pretty_print(spec)), spec)

    def test_file_name_is_the_default_spec_name(self):
        spec = parse_file(os.path.join(CORPUS, "singleton.aptc"))
        self.assertEqual(spec.name, "singleton")
        self.assertEqual(parse("act a;\nproc P = a;\n", name="scratch").name, "scratch")


if __name__ == "__main__":
    unittest.main()
