import json
import os
import sys
import tempfile
import unittest

# make src/ available so tests can import the aptc_verify package when running
repo_root = os.path.dirname(os.path.dirname(__file__))
src_path = os.path.join(repo_root, "src")
if src_path not in sys.path:
    sys.path.insert(0, src_path)

from aptc_verify import corpus
from aptc_verify.algebra.terms import Abstract, Encaps
from aptc_verify.core.errors import GuardednessError, ValidationError
from aptc_verify.dsl import parse
from aptc_verify.verifier import compose, observable_lts, verify, verify_corpus

BUFFER = """\
spec buffer;
param delta = 2 in 1..3;
domain Delta = values(delta);
act r_A(Delta), s_B(Delta), work;

proc P = r_A(?d) . work . s_B(d) . P;

hide {work};
system = P;
claim = sum d in Delta: r_A(d) . s_B(d) . CLAIM;
"""

RELAY = """\
spec relay;
param delta = 2 in 1..2;
domain Delta = values(delta);
act r_A(Delta), s_C(Delta), s_B(Delta), r_B(Delta), c_B(Delta), s_K, r_K, c_K;

gamma(s_B(d), r_B(d)) = c_B(d) for d in Delta;
gamma(r_B(d), s_B(d)) = c_B(d) for d in Delta;
gamma(s_K, r_K) = c_K;
gamma(r_K, s_K) = c_K;

proc F = r_A(?d) . s_B(d) . r_K . F;
proc G = r_B(?d) . s_C(d) . s_K . G;

encap {s_B, r_B, s_K, r_K};
hide {c_B, c_K};
system = F & G;
claim = sum d in Delta: r_A(d) . s_C(d) . CLAIM;
"""


class ComposeTests(unittest.TestCase):
    def test_operators_wrap_the_system(self):
        term = compose(parse(RELAY))
        self.assertIsInstance(term, Abstract)
        self.assertIsInstance(term.body, Encaps)

    def test_observable_lts_hides_internal_actions(self):
        spec = parse(BUFFER, {"delta": 1})
        visible = {e.text for e in observable_lts(spec).alphabet()}
        self.assertEqual(visible, {"r_A(1)", "s_B(1)", "tau"})
        raw = {e.text for e in observable_lts(spec, hidden=False).alphabet()}
        self.assertIn("work", raw)


class VerifyTests(unittest.TestCase):
    def test_buffer_meets_its_claim(self):
        report = verify(parse(BUFFER))
        self.assertTrue(report.equivalent)
        self.assertTrue(report.passed)
        self.assertLess(report.states_quotient, report.states_raw)
        self.assertIn("equivalent", report.describe())

    def test_relay_over_an_encapsulated_channel(self):
        report = verify(parse(RELAY))
        self.assertTrue(report.equivalent, report.describe())

    def test_wrong_claim_gives_a_counterexample(self):
        wrong = BUFFER.replace("r_A(d) . s_B(d) . CLAIM", "r_A(d) . s_B(1) . CLAIM")
        report = verify(parse(wrong))
        self.assertFalse(report.equivalent)
        self.assertIsNotNone(report.verdict.counterexample)
        self.assertEqual(report.to_dict()["verdict"]["equivalent"], False)
        self.assertIn("NOT equivalent", report.describe())

    def test_missing_claim(self):
        with self.assertRaises(ValidationError):
            verify(parse(BUFFER.replace("claim = sum d in Delta: r_A(d) . s_B(d) . CLAIM;\n", "")))

    def test_unguarded_process(self):
        text = BUFFER.replace("proc P = r_A(?d) . work . s_B(d) . P;", "proc P = tau . P + r_A(1) . s_B(1);")
        with self.assertRaises(GuardednessError):
            verify(parse(text))

    def test_artifacts(self):
        with tempfile.TemporaryDirectory() as out:
            report = verify(parse(BUFFER), out_dir=out)
            self.assertEqual(set(report.artifacts), {"composed", "collapsed", "claim", "report"})
            with open(report.artifacts["report"], encoding="utf-8") as fh:
                saved = json.load(fh)
            self.assertEqual(saved["name"], "buffer")
            self.assertTrue(saved["equivalent"])
            self.assertNotIn("timings_ms", saved)


class CorpusVerifyTests(unittest.TestCase):
    def test_singleton_smallest_instance(self):
        report = verify(corpus.load("singleton", {"n": 1, "delta": 1}), entry="singleton")
        self.assertTrue(report.equivalent, report.describe())

    def test_batch_reports_in_corpus_order(self):
        reports = verify_corpus("singleton", params={"n": 1, "delta": 1}, jobs=1)
        self.assertEqual([r.entry for r in reports], ["singleton"])
        self.assertTrue(reports[0].passed)

    def test_batch_records_errors(self):
        reports = verify_corpus("singleton", params={"n": 1, "delta": 1}, bound=1, jobs=1)
        self.assertIsNotNone(reports[0].error)
        self.assertEqual(reports[0].exit_code, 3)
        self.assertFalse(reports[0].passed)


if __name__ == "__main__":
    unittest.main()
