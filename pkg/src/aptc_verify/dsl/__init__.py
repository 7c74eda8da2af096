from .model import CLAIM, DataMap, Param, PatternSpec
from .parser import parse, parse_file
from .printer import pretty_print, print_label, print_term

__all__ = ["CLAIM", "DataMap", "Param", "PatternSpec", "parse", "parse_file", "pretty_print", "print_label", "print_term"]
