"""Tree shifts of finite type given by forbidden blocks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .core import Pattern, delta, iter_blocks, letter_order, pattern_key
from .errors import MismatchError
from .rabin import RabinAutomaton, accepted_blocks, essentialize, is_empty_shift

LOCAL = "local"
GLOBAL = "global"


@dataclass(frozen=True)
class SFT:
    """Configurations avoiding every forbidden block; all blocks have size ``memory``."""

    alphabet: tuple
    k: int
    memory: int
    forbidden: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "forbidden", frozenset(self.forbidden))
        if self.k < 1:
            raise ValueError("arity must be at least 1")
        if self.memory < 1:
            raise ValueError("memory must be at least 1")
        if not self.alphabet or len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet must be a nonempty sequence of distinct letters")
        support = delta(self.memory, self.k)
        for q in self.forbidden:
            if q.k != self.k or q.support() != support:
                raise ValueError(f"forbidden block {q} is not a block of size {self.memory}")
            if not q.letters() <= set(self.alphabet):
                raise MismatchError(f"forbidden block {q} uses letters outside the alphabet")

    def with_memory(self, n: int) -> SFT:
        return SFT(self.alphabet, self.k, n,
                   normalize_memory(self.forbidden, n, self.alphabet, self.k))


def full_shift(alphabet: Sequence[str], k: int) -> SFT:
    return SFT(tuple(alphabet), k, 1, frozenset())


def _extensions(q: Pattern, n: int, alphabet, k) -> Iterable[Pattern]:
    """Every block of size ``n`` whose restriction to the size of ``q`` is ``q``."""
    if n == 1:
        yield q
        return
    if q.is_leaf:
        below = iter_blocks(alphabet, k, n - 1)
        for kids in product(below, repeat=k):
            yield Pattern(q.label, kids)
        return
    for kids in product(*(list(_extensions(c, n - 1, alphabet, k)) for c in q.children)):
        yield Pattern(q.label, kids)


def normalize_memory(forbidden: Iterable[Pattern], n: int, alphabet: Sequence[str], k: int) -> frozenset:
    """Replace every forbidden block by all of its extensions to size ``n``."""
    out = set()
    for q in forbidden:
        m = q.height()
        if m > n:
            raise ValueError(f"cannot shrink a forbidden block of size {m} to size {n}")
        out.update(_extensions(q, n, alphabet, k))
    return frozenset(out)


def is_locally_admissible(X: SFT, p: Pattern) -> bool:
    """No forbidden block occurs at any vertex of ``p`` whose block fits inside ``p``."""
    if not X.forbidden:
        return True
    m = X.memory
    stack = [p]
    while stack:
        node = stack.pop()
        try:
            window = node.restrict(m)
        except ValueError:
            continue
        if window in X.forbidden:
            return False
        stack.extend(c for c in node.children if c is not None)
    return True


@lru_cache(maxsize=64)
def shift_automaton(X: SFT) -> RabinAutomaton:
    """Essential automaton presenting ``X``.

    States are the locally admissible blocks of size ``max(memory - 1, 1)``
    that survive essentialization; a bundle glues a state to its children's
    states when the combined block is locally admissible.  The state at a
    vertex is the block the configuration shows there.
    """
    size = max(X.memory - 1, 1)
    states = [q for q in iter_blocks(X.alphabet, X.k, size) if is_locally_admissible(X, q)]
    by_top = {}
    for q in states:
        key = q.restrict(size - 1) if size > 1 else None
        by_top.setdefault(key, []).append(q)
    bundles = []
    for q in states:
        slots = [by_top.get(q.children[s] if size > 1 else None, []) for s in range(X.k)]
        for kids in product(*slots):
            if is_locally_admissible(X, Pattern(q.label, kids)):
                bundles.append((q, q.label, kids))
    return essentialize(RabinAutomaton(X.k, X.alphabet, states, bundles))


def admissible_blocks(X: SFT, n: int, scope: str = GLOBAL) -> set:
    """Blocks of size ``n`` allowed by ``X``.

    ``local`` only checks forbidden blocks that fit inside the block;
    ``global`` returns the blocks that actually occur in configurations of
    ``X``.
    """
    if n < 1:
        raise ValueError("block size must be at least 1")
    if scope == LOCAL:
        return {p for p in iter_blocks(X.alphabet, X.k, n) if is_locally_admissible(X, p)}
    if scope != GLOBAL:
        raise ValueError(f"unknown scope {scope!r}")
    A = shift_automaton(X)
    size = max(X.memory - 1, 1)
    if n <= size:
        return {q.restrict(n) for q in A.states}
    return accepted_blocks(A, n)


def canonical_presentation(X: SFT) -> RabinAutomaton:
    """Automaton whose states are the blocks of size ``n - 1`` of ``X`` (``n - 1 >= memory``).

    Every block of size ``n`` of ``X`` yields the bundle from its top part
    to the top parts of its children, labeled by its root letter.
    """
    n = max(X.memory + 1, 2)
    order = letter_order(X.alphabet)
    states = sorted(admissible_blocks(X, n - 1), key=lambda p: pattern_key(p, order))
    bundles = [(B.restrict(n - 1), B.label, B.children) for B in admissible_blocks(X, n)]
    return RabinAutomaton(X.k, X.alphabet, states, bundles)


def sft_is_empty(X: SFT) -> bool:
    return is_empty_shift(shift_automaton(X))
