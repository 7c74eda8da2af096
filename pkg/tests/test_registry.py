import os
import sys
import unittest

# make src/ available so tests can import the aptc_verify package when running
repo_root = os.path.dirname(os.path.dirname(__file__))
src_path = os.path.join(repo_root, "src")
if src_path not in sys.path:
    sys.path.insert(0, src_path)

import main
from aptc_verify.core import registry


class RegistryTests(unittest.TestCase):
    def setUp(self):
        # ensure clean state for test commands
        registry.COMMAND_REGISTRY.pop("test-cmd", None)
        registry.COMMAND_REGISTRY.pop("dup-cmd", None)

    def tearDown(self):
        registry.COMMAND_REGISTRY.pop("test-cmd", None)
        registry.COMMAND_REGISTRY.pop("dup-cmd", None)

    def test_register_and_list(self):
        def configure(parser):
            parser.add_argument("--x")

        @registry.register_command("test-cmd", description="a test", configure=configure)
        def handler(args=None):
            return 0

        meta = registry.list_commands()["test-cmd"]
        self.assertEqual(meta.get("description"), "a test")
        self.assertIs(meta.get("configure"), configure)
        self.assertIs(registry.get_command("test-cmd"), handler)

    def test_duplicate_registration_raises(self):
        @registry.register_command("dup-cmd")
        def h1(args):
            return 1

        # second registration without overwrite should raise
        with self.assertRaises(ValueError):
            @registry.register_command("dup-cmd")
            def h2(args):
                return 2

        @registry.register_command("dup-cmd", overwrite=True)
        def h3(args):
            return 3

        self.assertIs(registry.get_command("dup-cmd"), h3)

    def test_unknown_command(self):
        self.assertIsNone(registry.get_command("test-cmd"))

    def test_list_is_a_copy(self):
        @registry.register_command("test-cmd")
        def handler(args):
            return 0

        listed = registry.list_commands()
        listed["test-cmd"]["description"] = "changed"
        self.assertEqual(registry.COMMAND_REGISTRY["test-cmd"]["description"], "")

    def test_registered_command_reaches_the_parser(self):
        @registry.register_command("test-cmd", description="a test",
                                   configure=lambda p: p.add_argument("--x", type=int))
        def handler(args):
            return 0

        args = main.build_parser().parse_args(["test-cmd", "--x", "3"])
        self.assertEqual((args.command, args.x), ("test-cmd", 3))


if __name__ == "__main__":
    unittest.main()
