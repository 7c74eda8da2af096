import io
import json
import os
import sys
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

# make src/ available so tests can import main and the aptc_verify package
repo_root = os.path.dirname(os.path.dirname(__file__))
src_path = os.path.join(repo_root, "src")
if src_path not in sys.path:
    sys.path.insert(0, src_path)

import main
from aptc_verify.semantics.lts import StepLTS

BUFFER = """\
spec buffer;
param delta = 1 in 1..3;
domain Delta = values(delta);
act r_A(Delta), s_B(Delta), work;
proc P = r_A(?d) . work . s_B(d) . P;
hide {work};
system = P;
claim = sum d in Delta: r_A(d) . s_B(d) . CLAIM;
"""


class CliTests(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.spec_path = os.path.join(self.tmp.name, "buffer.aptc")
        with open(self.spec_path, "w", encoding="utf-8") as fh:
            fh.write(BUFFER)

    def tearDown(self):
        self.tmp.cleanup()

    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main.main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def write_lts(self, name, *argv):
        code, out, _ = self.run_cli("lts", *argv, "--format", "json")
        self.assertEqual(code, 0)
        path = os.path.join(self.tmp.name, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(out)
        return path

    # ---------------- PARSE ---------------- #
    def test_parse_prints_canonical_text(self):
        code, out, _ = self.run_cli("parse", self.spec_path)
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("spec buffer;"))

    def test_parse_corpus_entry_as_json(self):
        code, out, _ = self.run_cli("parse", "singleton", "--n", "1", "--format", "json")
        self.assertEqual(code, 0)
        summary = json.loads(out)
        self.assertEqual(summary["params"], {"n": 1, "delta": 2})

    def test_bad_param_flag(self):
        code, _, err = self.run_cli("parse", self.spec_path, "--param", "delta")
        self.assertEqual(code, 2)
        self.assertIn("NAME=INT", err)

    # ---------------- VERIFY ---------------- #
    def test_verify_equivalent(self):
        code, out, _ = self.run_cli("verify", self.spec_path)
        self.assertEqual(code, 0)
        self.assertIn("equivalent", out)

    def test_verify_corpus_entry_as_json(self):
        code, out, _ = self.run_cli("verify", "singleton", "--n", "1", "--delta", "1", "--format", "json")
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)["equivalent"])

    def test_verify_mutant_is_not_equivalent(self):
        code, out, _ = self.run_cli("verify", "tss-wrong-channel")
        self.assertEqual(code, 1)
        self.assertIn("NOT equivalent", out)

    def test_verify_unknown_source(self):
        code, _, err = self.run_cli("verify", "no-such-pattern")
        self.assertEqual(code, 2)
        self.assertIn("unknown corpus entry", err)

    def test_verify_state_bound(self):
        code, _, err = self.run_cli("verify", self.spec_path, "--bound", "1")
        self.assertEqual(code, 3)
        self.assertIn("state bound", err)

    # ---------------- LTS / MINIMIZE / CHECK ---------------- #
    def test_lts_formats(self):
        code, out, _ = self.run_cli("lts", self.spec_path, "--format", "json")
        self.assertEqual(code, 0)
        lts = StepLTS.from_json(out)
        self.assertEqual(lts.num_states, 3)
        code, out, _ = self.run_cli("lts", self.spec_path, "--format", "dot", "--no-hide")
        self.assertIn("work", out)

    def test_minimize(self):
        path = self.write_lts("buffer.json", self.spec_path)
        code, out, _ = self.run_cli("minimize", path, "--format", "json")
        self.assertEqual(code, 0)
        self.assertEqual(StepLTS.from_json(out).num_states, 2)

    def test_check(self):
        left = self.write_lts("left.json", self.spec_path)
        right = self.write_lts("right.json", self.spec_path, "--no-hide")
        self.assertEqual(self.run_cli("check", left, left, "--kind", "step")[0], 0)
        code, out, _ = self.run_cli("check", left, right)
        self.assertEqual(code, 1)
        self.assertIn("NOT equivalent", out)
        self.assertEqual(self.run_cli("check", left, right, "--kind", "bogus")[0], 2)
        self.assertEqual(self.run_cli("check", left, left, "--kind", "pomset:99")[0], 2)
        code, _, err = self.run_cli("check", left, left, "--kind", "pomset:0")
        self.assertEqual(code, 2)
        self.assertIn("pomset size", err)

    def test_check_accepts_lts_suffix_and_bare_json(self):
        left = self.write_lts("left.lts", self.spec_path)
        bare = self.write_lts("right", self.spec_path)
        self.assertEqual(self.run_cli("check", left, bare, "--kind", "rbs")[0], 0)

    def test_lts_json_matches_golden_file(self):
        code, out, _ = self.run_cli("lts", self.spec_path, "--format", "json")
        self.assertEqual(code, 0)
        with open(os.path.join(repo_root, "tests", "golden", "buffer.lts.json"), encoding="utf-8") as fh:
            golden = fh.read().strip()
        self.assertEqual(out.strip(), golden)
        self.assertEqual(json.loads(out), json.loads(golden))

    # ---------------- CORPUS / AXIOMS ---------------- #
    def test_corpus_list(self):
        code, out, _ = self.run_cli("corpus", "--list", "--filter", "chapter=2", "--format", "json")
        self.assertEqual(code, 0)
        ids = [e["id"] for e in json.loads(out)]
        self.assertEqual(ids, ["abp", "abp-shadow", "abp-drop-gamma", "abp-shadow-broken"])

    def test_corpus_verify_single_entry(self):
        code, out, _ = self.run_cli("corpus", "--filter", "singleton", "--n", "1", "--delta", "1")
        self.assertEqual(code, 0)
        self.assertIn("1/1 entries as expected", out)

    def test_axioms(self):
        code, out, _ = self.run_cli("axioms", "--ids", "A1,A3", "--instances", "2", "--seed", "5")
        self.assertEqual(code, 0)
        self.assertEqual(len(out.strip().splitlines()), 2)
        self.assertEqual(self.run_cli("axioms", "--ids", "Z9")[0], 2)

    # ---------------- USAGE ---------------- #
    def test_usage_errors(self):
        self.assertEqual(self.run_cli()[0], 2)
        self.assertEqual(self.run_cli("frobnicate")[0], 2)
        self.assertEqual(self.run_cli("verify")[0], 2)


if __name__ == "__main__":
    unittest.main()
