"""Words, finite subtrees, patterns and Moore colorings of the k-regular rooted tree.

Vertices of the tree are words over the directions ``0 .. k-1`` and are
represented as tuples of ints; the root is the empty tuple.  Finite subtrees
are frozensets of words.  A :class:`Pattern` is a labeling of a finite subtree
and is stored as a nested term, which is also its interchange format::

    term := letter | letter '(' term ',' ... ',' term ')'   # exactly k subterms
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import ParseError

Word = tuple
EPSILON: Word = ()


def word_str(w: Word) -> str:
    if not w:
        return "e"
    if any(d >= 10 for d in w):
        return ".".join(map(str, w))
    return "".join(map(str, w))


def parse_word(text: str, k: int) -> Word:
    text = text.strip()
    if text == "e":
        return EPSILON
    parts = text.split(".") if "." in text else list(text)
    try:
        w = tuple(int(p) for p in parts)
    except ValueError:
        raise ParseError(f"bad word {text!r}") from None
    if any(d < 0 or d >= k for d in w):
        raise ParseError(f"word {text!r} has a direction outside 0..{k - 1}")
    return w


# -- finite subtrees ---------------------------------------------------------

def delta(n: int, k: int) -> frozenset:
    """All words of length < n, i.e. the full tree of height n."""
    if n < 1:
        raise ValueError("delta(n) needs n >= 1")
    if k < 1:
        raise ValueError("arity must be at least 1")
    words = [EPSILON]
    level = [EPSILON]
    for _ in range(n - 1):
        level = [w + (s,) for w in level for s in range(k)]
        words.extend(level)
    return frozenset(words)


def is_subtree(T: Iterable[Word]) -> bool:
    T = set(T)
    return EPSILON in T and all(w[:-1] in T for w in T if w)


def is_full_tree(T: Iterable[Word], k: int) -> bool:
    T = set(T)
    if not is_subtree(T):
        return False
    for w in T:
        n = sum(1 for s in range(k) if w + (s,) in T)
        if n not in (0, k):
            return False
    return True


def plus(T: Iterable[Word], k: int) -> frozenset:
    """``T`` together with every child of every vertex of ``T``."""
    T = frozenset(T)
    return T | {w + (s,) for w in T for s in range(k)}


def height(T: Iterable[Word]) -> int:
    T = list(T)
    if not T:
        raise ValueError("height of an empty tree is undefined")
    return max(len(w) for w in T) + 1


def leaves(T: Iterable[Word], k: int) -> frozenset:
    T = frozenset(T)
    return frozenset(w for w in T if not any(w + (s,) in T for s in range(k)))


# -- patterns ----------------------------------------------------------------

class Pattern:
    """A labeled finite subtree.

    ``children`` has exactly one slot per direction; ``None`` marks a
    direction whose child is not in the support.  A leaf has all slots
    ``None``.  Instances are immutable and hashable.
    """

    __slots__ = ("label", "children", "_hash", "__weakref__")

    # Equal patterns are interned, so equality of subterms is mostly identity.
    _interned = weakref.WeakValueDictionary()

    def __new__(cls, label: str, children: Sequence[Pattern | None]):
        children = tuple(children)
        key = (label, children)
        hit = cls._interned.get(key)
        if hit is not None:
            return hit
        if not children:
            raise ValueError("a pattern needs at least one child slot (k >= 1)")
        k = len(children)
        for c in children:
            if c is not None and len(c.children) != k:
                raise ValueError("children of a pattern must share its arity")
        self = object.__new__(cls)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "_hash", hash(key))
        cls._interned[key] = self
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Pattern is immutable")

    @classmethod
    def leaf(cls, label: str, k: int) -> Pattern:
        return cls(label, (None,) * k)

    @classmethod
    def node(cls, label: str, *children: Pattern) -> Pattern:
        return cls(label, children)

    @classmethod
    def from_labels(cls, labels: Mapping[Word, str], k: int) -> Pattern:
        if not is_subtree(labels):
            raise ValueError("pattern support must be a rooted prefix-closed set of words")

        def build(w):
            return cls(labels[w], tuple(build(w + (s,)) if w + (s,) in labels else None
                                        for s in range(k)))
        return build(EPSILON)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Pattern):
            return NotImplemented
        return self._hash == other._hash and self.label == other.label \
            and self.children == other.children

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (Pattern, (self.label, self.children))

    @property
    def k(self) -> int:
        return len(self.children)

    @property
    def is_leaf(self) -> bool:
        return all(c is None for c in self.children)

    def is_full(self) -> bool:
        if self.is_leaf:
            return True
        return all(c is not None and c.is_full() for c in self.children)

    def is_block(self) -> bool:
        return self.is_full() and self.support() == delta(self.height(), self.k)

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children if c is not None), default=0)

    def support(self) -> frozenset:
        return frozenset(self.labels())

    def labels(self) -> dict:
        out = {}
        stack = [(EPSILON, self)]
        while stack:
            w, p = stack.pop()
            out[w] = p.label
            for s, c in enumerate(p.children):
                if c is not None:
                    stack.append((w + (s,), c))
        return out

    def letters(self) -> set:
        return set(self.labels().values())

    def __contains__(self, w: Word) -> bool:
        p = self
        for s in w:
            p = p.children[s] if 0 <= s < len(p.children) else None
            if p is None:
                return False
        return True

    def __getitem__(self, w: Word) -> str:
        return self.subtree(w).label

    def subtree(self, w: Word) -> Pattern:
        """The pattern seen from vertex ``w``: ``p^w(u) = p(wu)``."""
        p = self
        for s in w:
            if not 0 <= s < len(p.children) or p.children[s] is None:
                raise ValueError(f"vertex {word_str(w)} is not in the support")
            p = p.children[s]
        return p

    def restrict(self, n: int) -> Pattern:
        """Restriction to the full tree of height ``n`` (which must be covered)."""
        if n < 1:
            raise ValueError("restrict(n) needs n >= 1")
        if n == 1:
            return Pattern.leaf(self.label, self.k) if not self.is_leaf else self
        if any(c is None for c in self.children):
            raise ValueError(f"pattern does not cover a block of size {n}")
        return Pattern(self.label, tuple(c.restrict(n - 1) for c in self.children))

    def restrict_to(self, T: Iterable[Word]) -> Pattern:
        T = frozenset(T)
        labels = self.labels()
        missing = T - labels.keys()
        if missing:
            raise ValueError("restriction support is not contained in the pattern support")
        return Pattern.from_labels({w: labels[w] for w in T}, self.k)

    def __str__(self):
        if self.is_leaf:
            return self.label
        inner = ",".join("_" if c is None else str(c) for c in self.children)
        return f"{self.label}({inner})"

    def __repr__(self):
        return f"Pattern({str(self)!r})"


def subtree_shift(p: Pattern, w: Word) -> Pattern:
    return p.subtree(w)


def pattern_key(p: Pattern, order: Mapping[str, int]):
    """Sort key realizing the canonical term order.

    Letters compare by their position in the alphabet, and a leaf sorts
    before an internal vertex with the same letter.  This is the token order
    of the serialization where the end of a term precedes ``)`` and ``,``,
    which precede ``(``, which precedes every letter; under it the least
    term can be assembled child by child.
    """
    if p.is_leaf:
        return (order[p.label],)
    return (order[p.label],) + tuple(pattern_key(c, order) if c is not None else ()
                                     for c in p.children)


def letter_order(alphabet: Sequence[str]) -> dict:
    return {a: i for i, a in enumerate(alphabet)}


def sort_patterns(patterns: Iterable[Pattern], alphabet: Sequence[str]) -> list:
    order = letter_order(alphabet)
    return sorted(patterns, key=lambda p: (p.height(), pattern_key(p, order)))


def parse_term(text: str, alphabet: Sequence[str], k: int) -> Pattern:
    """Parse the canonical term syntax; whitespace between tokens is ignored."""
    letters = sorted(alphabet, key=len, reverse=True)
    pos = 0
    n = len(text)

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def term():
        nonlocal pos
        skip()
        for a in letters:
            if text.startswith(a, pos):
                pos += len(a)
                break
        else:
            raise ParseError(f"expected a letter at offset {pos} in {text!r}")
        skip()
        if pos < n and text[pos] == "(":
            pos += 1
            kids = [term()]
            skip()
            while pos < n and text[pos] == ",":
                pos += 1
                kids.append(term())
                skip()
            if pos >= n or text[pos] != ")":
                raise ParseError(f"expected ')' at offset {pos} in {text!r}")
            pos += 1
            if len(kids) != k:
                raise ParseError(f"vertex {a!r} has {len(kids)} children, expected {k}")
            return Pattern(a, kids)
        return Pattern.leaf(a, k)

    if k < 1:
        raise ParseError("arity must be at least 1")
    result = term()
    skip()
    if pos != n:
        raise ParseError(f"trailing input at offset {pos} in {text!r}")
    return result


# -- enumeration -------------------------------------------------------------

def iter_blocks(alphabet: Sequence[str], k: int, n: int) -> list:
    """Every block of size ``n`` over ``alphabet``."""
    if n < 1:
        raise ValueError("block size must be >= 1")
    level = [Pattern.leaf(a, k) for a in alphabet]
    for _ in range(n - 1):
        level = [Pattern(a, kids) for a in alphabet for kids in product(level, repeat=k)]
    return level


def iter_patterns(alphabet: Sequence[str], k: int, max_height: int) -> list:
    """Every full-tree-pattern of height at most ``max_height``."""
    if max_height < 1:
        return []
    pats = [Pattern.leaf(a, k) for a in alphabet]
    for _ in range(max_height - 1):
        pats = [Pattern.leaf(a, k) for a in alphabet] + \
               [Pattern(a, kids) for a in alphabet for kids in product(pats, repeat=k)]
    return pats


def iter_full_trees(k: int, max_height: int) -> list:
    if max_height < 1:
        return []
    trees = [frozenset([EPSILON])]
    for _ in range(max_height - 1):
        new = [frozenset([EPSILON])]
        for kids in product(trees, repeat=k):
            T = {EPSILON}
            for s, sub in enumerate(kids):
                T.update((s,) + w for w in sub)
            new.append(frozenset(T))
        trees = new
    return trees


def patterns_on(T: Iterable[Word], alphabet: Sequence[str], k: int) -> list:
    T = sorted(T)
    return [Pattern.from_labels(dict(zip(T, labels)), k)
            for labels in product(alphabet, repeat=len(T))]


# -- Moore colorings ---------------------------------------------------------

@dataclass(frozen=True, eq=True)
class MooreColoring:
    """A finite machine that colors every vertex of the tree.

    The color of ``w`` is ``output[q]`` where ``q`` is reached from ``start``
    by reading the directions of ``w``.
    """

    k: int
    alphabet: tuple
    states: tuple
    start: Hashable
    step: Mapping = field(hash=False)
    output: Mapping = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "step", dict(self.step))
        object.__setattr__(self, "output", dict(self.output))
        if self.k < 1:
            raise ValueError("arity must be at least 1")
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate machine states")
        if self.start not in self.states:
            raise ValueError(f"start state {self.start!r} is not a machine state")
        for q in self.states:
            if self.output.get(q) not in self.alphabet:
                raise ValueError(f"state {q!r} has no output letter in the alphabet")
            for s in range(self.k):
                if self.step.get((q, s)) not in self.states:
                    raise ValueError(f"step from {q!r} along {s} is undefined")

    def restart(self, q) -> MooreColoring:
        return MooreColoring(self.k, self.alphabet, self.states, q, self.step, self.output)

    def state_at(self, w: Word):
        q = self.start
        for s in w:
            q = self.step[q, s]
        return q


def moore_expand(m: MooreColoring, T: Iterable[Word]) -> Pattern:
    """Truncation of the configuration described by ``m`` to the subtree ``T``."""
    T = frozenset(T)
    if not is_subtree(T):
        raise ValueError("expansion support must be a rooted subtree")

    def build(w, q):
        return Pattern(m.output[q], tuple(build(w + (s,), m.step[q, s]) if w + (s,) in T else None
                                          for s in range(m.k)))
    return build(EPSILON, m.start)


def moore_block(m: MooreColoring, n: int) -> Pattern:
    return moore_expand(m, delta(n, m.k))
