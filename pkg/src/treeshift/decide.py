"""Fullness, equality, containment and surjectivity for sofic tree shifts.

Every negative answer comes with a witness full-tree-pattern that can be
re-checked with the acceptance primitives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .ca import CellularAutomaton, apply_to_pattern, image_automaton, image_from_local, sft_cover
from .core import Pattern, letter_order, pattern_key
from .errors import MismatchError
from .fta import COMPLEMENT, FiniteTreeAutomaton, fta_is_empty, product_base, sample_accepted, subset_fta
from .rabin import RabinAutomaton, _require_essential, union_alphabet
from .sft import SFT, canonical_presentation

SoficInput = Union[RabinAutomaton, SFT, tuple]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure.

    ``side`` tells which of two compared shifts contains the witness
    (1 or 2); it stays ``None`` when only one shift is involved.
    """

    answer: bool
    witness: Pattern | None = None
    side: int | None = None

    def __bool__(self):
        return self.answer


def as_automaton(X: SoficInput) -> RabinAutomaton:
    """Essential presentation of a sofic input.

    Accepts an automaton, a shift of finite type, or a pair
    ``(shift of finite type, cellular automaton)`` standing for the image.
    """
    if isinstance(X, RabinAutomaton):
        _require_essential(X)
        return X
    if isinstance(X, SFT):
        return canonical_presentation(X)
    if isinstance(X, tuple) and len(X) == 2 and isinstance(X[0], SFT) \
            and isinstance(X[1], CellularAutomaton):
        return image_automaton(X[1], X[0])
    raise TypeError(f"not a sofic input: {X!r}")


def is_full(A: RabinAutomaton, budget=None) -> Verdict:
    """Whether ``A`` accepts every configuration over its alphabet."""
    _require_essential(A)
    G = subset_fta(A, COMPLEMENT, budget=budget)
    if fta_is_empty(G):
        return Verdict(True)
    return Verdict(False, sample_accepted(G))


def difference_automata(A1: RabinAutomaton, A2: RabinAutomaton, budget=None):
    """Finite-tree automata for the patterns of ``A1`` missing from ``A2`` and vice versa.

    Both complement automata are joined; a pair is initial for the first
    difference when only its second component is the empty set, and for the
    second difference when only its first component is.
    """
    if A1.k != A2.k:
        raise MismatchError(f"arity mismatch: {A1.k} vs {A2.k}")
    _require_essential(A1)
    _require_essential(A2)
    alphabet = union_alphabet(A1.alphabet, A2.alphabet)
    G1 = subset_fta(A1.with_alphabet(alphabet), COMPLEMENT, budget=budget)
    G2 = subset_fta(A2.with_alphabet(alphabet), COMPLEMENT, budget=budget)
    (I1,), (I2,) = G1.initials, G2.initials
    base, final = product_base(G1, G2, budget=budget)
    only_first = {st for st in base.states if st[0] != I1 and st[1] == I2}
    only_second = {st for st in base.states if st[0] == I1 and st[1] != I2}
    return FiniteTreeAutomaton(base, only_first, final), FiniteTreeAutomaton(base, only_second, final)


def _least(candidates, alphabet):
    order = letter_order(alphabet)
    found = [(p.height(), pattern_key(p, order), side, p) for side, p in candidates if p is not None]
    if not found:
        return None
    return min(found, key=lambda t: t[:3])


def equal_sofic(X1: SoficInput, X2: SoficInput, budget=None) -> Verdict:
    A1, A2 = as_automaton(X1), as_automaton(X2)
    D1, D2 = difference_automata(A1, A2, budget=budget)
    best = _least([(1, sample_accepted(D1)), (2, sample_accepted(D2))], D1.alphabet)
    if best is None:
        return Verdict(True)
    return Verdict(False, best[3], best[2])


def contained_sofic(X1: SoficInput, X2: SoficInput, budget=None) -> Verdict:
    """Whether the first shift is contained in the second."""
    A1, A2 = as_automaton(X1), as_automaton(X2)
    D1, _ = difference_automata(A1, A2, budget=budget)
    w = sample_accepted(D1)
    if w is None:
        return Verdict(True)
    return Verdict(False, w, 1)


def _trivially_full(Y: SoficInput, alphabet) -> bool:
    """Cheap syntactic check that ``Y`` is the full shift over ``alphabet``."""
    if isinstance(Y, SFT):
        return not Y.forbidden and set(Y.alphabet) == set(alphabet)
    if isinstance(Y, RabinAutomaton) and set(Y.alphabet) == set(alphabet):
        return any(all(any(b.label == a and all(t == s for t in b.terminals) for b in Y.outgoing(s))
                       for a in Y.alphabet) for s in Y.states)
    return False


def surjective(tau: CellularAutomaton, X: SoficInput, Y: SoficInput, budget=None,
               fast_path=True) -> Verdict:
    """Whether ``tau`` maps the sofic shift ``X`` onto the sofic shift ``Y``.

    ``X`` is first written as the image of a shift of finite type ``Z``
    under some ``tau'``; ``tau`` composed with ``tau'`` is then presented on
    ``Z`` and compared with ``Y``.  A witness with ``side == 2`` is a pattern
    of ``Y`` without preimage; ``side == 1`` means the image leaves ``Y``.
    """
    if isinstance(X, RabinAutomaton):
        _require_essential(X)
        Z, cover = sft_cover(X)
    elif isinstance(X, SFT):
        Z, cover = X, None
    elif isinstance(X, tuple) and len(X) == 2:
        Z, cover = X
    else:
        raise TypeError(f"not a sofic input: {X!r}")
    if Z.k != tau.k:
        raise MismatchError(f"arity mismatch: {Z.k} vs {tau.k}")
    source_alphabet = Z.alphabet if cover is None else cover.out_alphabet
    if not set(source_alphabet) <= set(tau.in_alphabet):
        raise MismatchError("source shift uses letters outside the automaton's input alphabet")

    if cover is None:
        local, memory = tau.local, tau.memory
    else:
        if cover.k != tau.k:
            raise MismatchError(f"arity mismatch: {cover.k} vs {tau.k}")
        memory = cover.memory + tau.memory - 1

        def local(block):
            return tau.local(apply_to_pattern(cover, block.restrict(memory)))

    image = image_from_local(local, memory, Z, tau.out_alphabet)
    if fast_path and cover is None and not Z.forbidden and _trivially_full(Y, tau.out_alphabet):
        v = is_full(image, budget=budget)
        return Verdict(v.answer, v.witness, None if v.answer else 2)
    return equal_sofic(image, Y, budget=budget)
