"""Sofic tree shifts on the k-regular rooted tree.

Rabin automata presenting sofic shifts, finite-tree automata over
full-tree-patterns, shifts of finite type, cellular automata, and decision
procedures for emptiness, fullness, equality and surjectivity.
"""

from .ca import CellularAutomaton, apply_to_pattern, compose, identity_ca, image_automaton, sft_cover
from .core import MooreColoring, Pattern, delta, iter_blocks, iter_patterns, parse_term
from .decide import Verdict, contained_sofic, equal_sofic, is_full, surjective
from .errors import BudgetExceeded, MismatchError, NotEssentialError, ParseError, TreeShiftError
from .fta import FiniteTreeAutomaton, complement, fta_accepts, fta_is_empty, sample_accepted, subset_fta
from .rabin import (RabinAutomaton, accepts_pattern, classify, codeterminize, essentialize,
                    full_shift_automaton, join, member_moore)
from .sft import SFT, admissible_blocks, canonical_presentation, full_shift

__all__ = [
    "BudgetExceeded", "CellularAutomaton", "FiniteTreeAutomaton", "MismatchError", "MooreColoring",
    "NotEssentialError", "ParseError", "Pattern", "RabinAutomaton", "SFT", "TreeShiftError", "Verdict",
    "accepts_pattern", "admissible_blocks", "apply_to_pattern", "canonical_presentation", "classify",
    "codeterminize", "complement", "compose", "contained_sofic", "delta", "equal_sofic", "essentialize",
    "fta_accepts", "fta_is_empty", "full_shift", "full_shift_automaton", "identity_ca", "image_automaton",
    "is_full", "iter_blocks", "iter_patterns", "join", "member_moore", "parse_term", "sample_accepted",
    "sft_cover", "subset_fta", "surjective",
]
