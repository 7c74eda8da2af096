# test_engine.py
import argparse
import io
import os
import sys
import unittest
from contextlib import redirect_stderr

# allow running this test module directly by adding src/ to sys.path so
# the `aptc_verify` package (under src/) can be imported during tests
repo_root = os.path.dirname(os.path.dirname(__file__))
src_path = os.path.join(repo_root, "src")
if src_path not in sys.path:
    sys.path.insert(0, src_path)

from aptc_verify.core import engine, registry
from aptc_verify.core.errors import StateBoundError, ValidationError, Diagnostic

COMMANDS = ["fake-ok", "fake-none", "fake-usage", "fake-resource", "fake-crash"]


class EngineTests(unittest.TestCase):
    def setUp(self):
        for name in COMMANDS:
            registry.COMMAND_REGISTRY.pop(name, None)

        @registry.register_command("fake-ok")
        def fake_ok(args):
            return engine.EXIT_NOT_EQUIVALENT if args.flag else engine.EXIT_OK

        @registry.register_command("fake-none")
        def fake_none(args):
            self.seen_cid = args.cid

        @registry.register_command("fake-usage")
        def fake_usage(args):
            raise ValidationError([Diagnostic("error", "bad input", line=3, column=4)])

        @registry.register_command("fake-resource")
        def fake_resource(args):
            raise StateBoundError(10, 2)

        @registry.register_command("fake-crash")
        def fake_crash(args):
            raise RuntimeError("boom")

    def tearDown(self):
        for name in COMMANDS:
            registry.COMMAND_REGISTRY.pop(name, None)

    def run_quietly(self, name, **kwargs):
        err = io.StringIO()
        with redirect_stderr(err):
            code = engine.run_command(name, argparse.Namespace(**kwargs))
        return code, err.getvalue()

    # ---------------- EXIT CODES ---------------- #
    def test_handler_code_is_returned(self):
        self.assertEqual(self.run_quietly("fake-ok", flag=False)[0], 0)
        self.assertEqual(self.run_quietly("fake-ok", flag=True)[0], 1)

    def test_none_means_success_and_cid_is_set(self):
        code, _ = self.run_quietly("fake-none")
        self.assertEqual(code, 0)
        self.assertEqual(len(self.seen_cid), 32)

    def test_validation_error_is_a_usage_error(self):
        code, err = self.run_quietly("fake-usage")
        self.assertEqual(code, engine.EXIT_USAGE)
        self.assertIn("3:4: bad input", err)

    def test_resource_error(self):
        code, err = self.run_quietly("fake-resource")
        self.assertEqual(code, engine.EXIT_RESOURCE)
        self.assertTrue(err.startswith("error:"))

    def test_unexpected_exception(self):
        code, err = self.run_quietly("fake-crash")
        self.assertEqual(code, engine.EXIT_USAGE)
        self.assertIn("boom", err)

    # ---------------- UNKNOWN COMMAND ---------------- #
    def test_unknown_command(self):
        code, err = self.run_quietly("no-such-command")
        self.assertEqual(code, engine.EXIT_USAGE)
        self.assertIn("unknown command", err)


if __name__ == "__main__":
    unittest.main()
