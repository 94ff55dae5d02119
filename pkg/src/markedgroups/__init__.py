"""Marked groups as executable word-problem oracles."""
from .clopen import (BasicClopenSet, RecPresentation, inclusion_semidecide, incoherent_semidecide,
                     kuznetsov_wp, member)
from .metric import CayleyBall, Dyadic, ball, cayley_distance, distance
from .oracle import GroupSequence, MarkedGroup, SpecError, check_lawful, limit
from .parsing import ParseError, format_word, parse_group, parse_word
from .verdict import Fuel, OutOfFuel, Status, Verdict
from .words import MalformedInput, Word, reduce

__all__ = [
    "BasicClopenSet", "RecPresentation", "inclusion_semidecide", "incoherent_semidecide",
    "kuznetsov_wp", "member", "CayleyBall", "Dyadic", "ball", "cayley_distance", "distance",
    "GroupSequence", "MarkedGroup", "SpecError", "check_lawful", "limit", "ParseError",
    "format_word", "parse_group", "parse_word", "Fuel", "OutOfFuel", "Status", "Verdict",
    "MalformedInput", "Word", "reduce",
]
