"""Cellular automata between tree shifts, and automata presenting their images."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping, Sequence

from .core import MooreColoring, Pattern, iter_blocks, letter_order, moore_block, pattern_key
from .errors import MismatchError, check_budget
from .rabin import RabinAutomaton, _require_essential
from .sft import SFT, admissible_blocks


@dataclass(frozen=True)
class CellularAutomaton:
    """Local rule on blocks of size ``memory``: ``tau(f)(w) = rule[f^w restricted to the block]``."""

    in_alphabet: tuple
    out_alphabet: tuple
    k: int
    memory: int
    rule: Mapping = field(hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "in_alphabet", tuple(self.in_alphabet))
        object.__setattr__(self, "out_alphabet", tuple(self.out_alphabet))
        object.__setattr__(self, "rule", dict(self.rule))
        if self.memory < 1:
            raise ValueError("memory must be at least 1")
        blocks = iter_blocks(self.in_alphabet, self.k, self.memory)
        missing = [b for b in blocks if b not in self.rule]
        if missing:
            raise ValueError(f"rule is not total: no value for {missing[0]}")
        if len(self.rule) != len(blocks):
            raise ValueError("rule has entries that are not blocks of the memory size")
        bad = {v for v in self.rule.values() if v not in self.out_alphabet}
        if bad:
            raise MismatchError(f"rule outputs {sorted(bad)} are not in the output alphabet")

    @classmethod
    def from_function(cls, in_alphabet: Sequence[str], out_alphabet: Sequence[str], k: int,
                      memory: int, fn: Callable[[Pattern], str], budget=None) -> CellularAutomaton:
        check_budget(len(in_alphabet) ** _delta_size(memory, k), budget, "rule table")
        return cls(in_alphabet, out_alphabet, k, memory,
                   {b: fn(b) for b in iter_blocks(in_alphabet, k, memory)})

    def local(self, block: Pattern) -> str:
        """Rule applied to the top ``memory`` levels of a block of at least that size."""
        hit = self.rule.get(block)
        if hit is not None:
            return hit
        return self.rule[block.restrict(self.memory)]


def _delta_size(n, k):
    return n if k == 1 else (k ** n - 1) // (k - 1)


def identity_ca(alphabet: Sequence[str], k: int) -> CellularAutomaton:
    return CellularAutomaton.from_function(alphabet, alphabet, k, 1, lambda b: b.label)


def constant_ca(alphabet: Sequence[str], k: int, letter: str, out_alphabet=None) -> CellularAutomaton:
    return CellularAutomaton.from_function(alphabet, out_alphabet or alphabet, k, 1, lambda b: letter)


def apply_to_pattern(tau: CellularAutomaton, p: Pattern) -> Pattern:
    """Image of a block of size ``m + n - 1`` as a block of size ``m``."""
    n = tau.memory
    size = p.height()
    if not p.is_block():
        raise ValueError("cellular automata act on blocks")
    if size < n:
        raise ValueError(f"block of size {size} is smaller than the memory {n}")

    def image(node, m):
        if m == 1:
            return Pattern.leaf(tau.local(node), tau.k)
        return Pattern(tau.local(node), [image(c, m - 1) for c in node.children])

    return image(p, size - n + 1)


def pad_memory(tau: CellularAutomaton, n: int, budget=None) -> CellularAutomaton:
    if n < tau.memory:
        raise ValueError(f"cannot pad memory {tau.memory} down to {n}")
    if n == tau.memory:
        return tau
    return CellularAutomaton.from_function(tau.in_alphabet, tau.out_alphabet, tau.k, n,
                                           tau.local, budget=budget)


def compose(tau2: CellularAutomaton, tau1: CellularAutomaton, budget=None) -> CellularAutomaton:
    """``tau2`` after ``tau1``, with memory ``n1 + n2 - 1``."""
    if tau1.k != tau2.k:
        raise MismatchError(f"arity mismatch: {tau1.k} vs {tau2.k}")
    if not set(tau1.out_alphabet) <= set(tau2.in_alphabet):
        raise MismatchError("output alphabet of the inner automaton must feed the outer one")
    n = tau1.memory + tau2.memory - 1
    return CellularAutomaton.from_function(
        tau1.in_alphabet, tau2.out_alphabet, tau1.k, n,
        lambda b: tau2.local(apply_to_pattern(tau1, b)), budget=budget)


def apply_to_moore(tau: CellularAutomaton, m: MooreColoring) -> MooreColoring:
    if m.k != tau.k:
        raise MismatchError(f"arity mismatch: {m.k} vs {tau.k}")
    if not set(m.alphabet) <= set(tau.in_alphabet):
        raise MismatchError("coloring uses letters outside the input alphabet")
    output = {q: tau.local(moore_block(m.restart(q), tau.memory)) for q in m.states}
    return MooreColoring(m.k, tau.out_alphabet, m.states, m.start, m.step, output)


def image_from_local(local: Callable[[Pattern], str], memory: int, X: SFT,
                     out_alphabet: Sequence[str]) -> RabinAutomaton:
    """Automaton presenting the image of ``X`` under a local rule of the given memory.

    With ``n = max(memory, X.memory + 1, 2)`` the states are the blocks of
    size ``n - 1`` of ``X``.  Each block ``B`` of size ``n`` of ``X`` gives
    the bundle from its top part to its children's top parts, labeled by
    the rule applied to ``B``; a rule of smaller memory reads only the top
    of ``B``.
    """
    n = max(memory, X.memory + 1, 2)
    order = letter_order(X.alphabet)
    states = sorted(admissible_blocks(X, n - 1), key=lambda p: pattern_key(p, order))
    bundles = {(B.restrict(n - 1), local(B), B.children) for B in admissible_blocks(X, n)}
    return RabinAutomaton(X.k, out_alphabet, states, bundles)


def image_automaton(tau: CellularAutomaton, X: SFT) -> RabinAutomaton:
    if tau.k != X.k:
        raise MismatchError(f"arity mismatch: {tau.k} vs {X.k}")
    if not set(X.alphabet) <= set(tau.in_alphabet):
        raise MismatchError("shift alphabet is not covered by the automaton's input alphabet")
    return image_from_local(tau.local, tau.memory, X, tau.out_alphabet)


def sft_cover(A: RabinAutomaton) -> tuple[SFT, CellularAutomaton]:
    """Shift of finite type over the bundles of ``A`` mapping onto the shift of ``A``.

    A configuration of the cover assigns a bundle to every vertex such that
    each child's bundle starts where its parent's bundle ends; the cellular
    automaton keeps the bundle label.  The letter ``t<i>`` stands for
    ``A.bundles[i]``.
    """
    _require_essential(A)
    if not A.states:
        raise ValueError("the empty automaton has no cover")
    letters = {f"t{i}": b for i, b in enumerate(A.bundles)}
    names = tuple(letters)
    forbidden = set()
    for top in names:
        for kids in product(names, repeat=A.k):
            if any(letters[c].state != letters[top].terminals[s] for s, c in enumerate(kids)):
                forbidden.add(Pattern(top, [Pattern.leaf(c, A.k) for c in kids]))
    Z = SFT(names, A.k, 2, frozenset(forbidden))
    tau = CellularAutomaton(names, A.alphabet, A.k, 1,
                            {Pattern.leaf(t, A.k): letters[t].label for t in names})
    return Z, tau
