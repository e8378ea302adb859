"""Unrestricted Rabin automata over the k-regular rooted tree.

A transition bundle ``(s; a; s_0, ..., s_{k-1})`` lets a vertex in state
``s`` carry the letter ``a`` while its children are in states ``s_0 .. s_{k-1}``.
A configuration is accepted when some state assignment of the whole tree
respects the bundles at every vertex.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product
from typing import Hashable, Iterable, NamedTuple, Sequence

from .core import EPSILON, MooreColoring, Pattern, letter_order
from .errors import MismatchError, NotEssentialError, check_budget


class Bundle(NamedTuple):
    state: Hashable
    label: str
    terminals: tuple


class Classification(NamedTuple):
    deterministic: bool
    codeterministic: bool
    cocomplete: bool


class RabinAutomaton:
    """Finite states plus transition bundles.

    ``states`` is ordered; that order, then the alphabet order, decides
    every tie-break (witness runs, extensions, canonical output).
    """

    def __init__(self, k: int, alphabet: Iterable[str], states: Iterable[Hashable],
                 bundles: Iterable):
        self.k = int(k)
        self.alphabet = tuple(alphabet)
        self.states = tuple(states)
        if self.k < 1:
            raise ValueError("arity must be at least 1")
        if len(set(self.alphabet)) != len(self.alphabet) or not self.alphabet:
            raise ValueError("alphabet must be a nonempty sequence of distinct letters")
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate states")
        self._sidx = {s: i for i, s in enumerate(self.states)}
        self._lidx = letter_order(self.alphabet)
        seen = set()
        for b in bundles:
            b = Bundle(b[0], b[1], tuple(b[2]))
            if b.state not in self._sidx or any(t not in self._sidx for t in b.terminals):
                raise ValueError(f"bundle {b} references an unknown state")
            if b.label not in self._lidx:
                raise ValueError(f"bundle {b} uses a letter outside the alphabet")
            if len(b.terminals) != self.k:
                raise ValueError(f"bundle {b} must have exactly {self.k} terminal states")
            seen.add(b)
        self.bundles = tuple(sorted(seen, key=self.bundle_key))
        self._out = defaultdict(list)
        self._by_label = defaultdict(list)
        for b in self.bundles:
            self._out[b.state].append(b)
            self._by_label[b.label].append(b)

    def bundle_key(self, b: Bundle):
        return (self._sidx[b.state], self._lidx[b.label], tuple(self._sidx[t] for t in b.terminals))

    def state_index(self, s) -> int:
        return self._sidx[s]

    def outgoing(self, s) -> list:
        return self._out.get(s, [])

    def with_label(self, a) -> list:
        return self._by_label.get(a, [])

    def is_essential(self) -> bool:
        return all(self._out.get(s) for s in self.states)

    def with_alphabet(self, alphabet: Sequence[str]) -> RabinAutomaton:
        """Same bundles over a larger alphabet."""
        if not set(self.alphabet) <= set(alphabet):
            raise MismatchError("new alphabet must contain the old one")
        return RabinAutomaton(self.k, alphabet, self.states, self.bundles)

    def __eq__(self, other):
        if not isinstance(other, RabinAutomaton):
            return NotImplemented
        return (self.k, self.alphabet, self.states, set(self.bundles)) == \
            (other.k, other.alphabet, other.states, set(other.bundles))

    def __hash__(self):
        return hash((self.k, self.alphabet, self.states, self.bundles))

    def __repr__(self):
        return (f"RabinAutomaton(k={self.k}, alphabet={self.alphabet}, "
                f"{len(self.states)} states, {len(self.bundles)} bundles)")


def union_alphabet(*alphabets: Sequence[str]) -> tuple:
    out = []
    for alph in alphabets:
        out.extend(a for a in alph if a not in out)
    return tuple(out)


def full_shift_automaton(alphabet: Sequence[str], k: int, state="u") -> RabinAutomaton:
    """One state with a bundle loop for every letter."""
    return RabinAutomaton(k, alphabet, [state], [(state, a, (state,) * k) for a in alphabet])


def essentialize(A: RabinAutomaton) -> RabinAutomaton:
    """Greatest sub-automaton in which every state starts some bundle."""
    alive = set(A.states)
    bundles = list(A.bundles)
    while True:
        bundles = [b for b in bundles if b.state in alive and all(t in alive for t in b.terminals)]
        sources = {b.state for b in bundles}
        if sources == alive:
            break
        alive = sources
    return RabinAutomaton(A.k, A.alphabet, [s for s in A.states if s in alive], bundles)


def is_empty_shift(A: RabinAutomaton) -> bool:
    return not essentialize(A).states


def classify(A: RabinAutomaton) -> Classification:
    by_init = set()
    by_term = set()
    det = codet = True
    for b in A.bundles:
        key = (b.state, b.label)
        if key in by_init:
            det = False
        by_init.add(key)
        key = (b.terminals, b.label)
        if key in by_term:
            codet = False
        by_term.add(key)
    cocomplete = len(by_term) == len(A.alphabet) * len(A.states) ** A.k
    return Classification(det, codet, cocomplete)


def _require_essential(A: RabinAutomaton):
    if not A.is_essential():
        raise NotEssentialError("automaton is not essential; run essentialize() first")


def _require_fits(A: RabinAutomaton, p: Pattern):
    if p.k != A.k:
        raise MismatchError(f"pattern arity {p.k} differs from automaton arity {A.k}")
    extra = p.letters() - set(A.alphabet)
    if extra:
        raise MismatchError(f"pattern letters {sorted(extra)} are not in the automaton alphabet")


def _feasible_sets(A: RabinAutomaton, p: Pattern) -> dict:
    """Per vertex, the states from which the subpattern there is accepted."""
    feas = {}

    def visit(w, node):
        kids = [visit(w + (s,), c) if c is not None else None for s, c in enumerate(node.children)]
        here = set()
        for b in A.with_label(node.label):
            if b.state not in here and all(ks is None or t in ks for t, ks in zip(b.terminals, kids)):
                here.add(b.state)
        feas[w] = here
        return here

    visit(EPSILON, p)
    return feas


def find_run(A: RabinAutomaton, p: Pattern) -> dict | None:
    """A run accepting ``p`` or ``None``.

    Each vertex checks the sub-bundle condition against its children in the
    support, so leaves only need a bundle with the right label.  For a full
    support the returned run also covers the children of the leaves.  The
    run picks the least state at the root and the least bundle below.
    """
    _require_essential(A)
    _require_fits(A, p)
    feas = _feasible_sets(A, p)
    if not feas[EPSILON]:
        return None
    full = p.is_full()
    run = {}

    def assign(w, node, state):
        run[w] = state
        for b in A.outgoing(state):
            if b.label == node.label and all(c is None or t in feas[w + (s,)]
                                             for s, (t, c) in enumerate(zip(b.terminals, node.children))):
                break
        else:  # pragma: no cover - feas guarantees a bundle
            raise AssertionError("feasible state without a matching bundle")
        for s, (t, c) in enumerate(zip(b.terminals, node.children)):
            if c is not None:
                assign(w + (s,), c, t)
            elif full:
                run[w + (s,)] = t

    root = min(feas[EPSILON], key=A.state_index)
    assign(EPSILON, p, root)
    return run


def accepts_pattern(A: RabinAutomaton, p: Pattern) -> bool:
    return find_run(A, p) is not None


def is_valid_run(A: RabinAutomaton, p: Pattern, run: dict) -> bool:
    """Whether ``run`` witnesses acceptance of ``p`` (sub-bundle condition on the support)."""
    labels = p.labels()
    for w, a in labels.items():
        if w not in run:
            return False
        ok = False
        for b in A.outgoing(run[w]):
            if b.label != a:
                continue
            if all(run.get(w + (s,), t) == t for s, t in enumerate(b.terminals)):
                ok = True
                break
        if not ok:
            return False
    return True


def extend_accepted(A: RabinAutomaton, p: Pattern, run: dict, d: int) -> Pattern:
    """Extend an accepted pattern to an accepted block of size ``d``.

    Inside the support the bundle must agree with ``p`` and ``run``; beyond
    it, the least outgoing bundle of the current state is used.
    """
    _require_essential(A)
    if d < p.height():
        raise ValueError(f"target size {d} is below the pattern height {p.height()}")
    if not is_valid_run(A, p, run):
        raise ValueError("run is not a valid witness for the pattern")

    def build(w, node, state, depth):
        for b in A.outgoing(state):
            if node is not None and b.label != node.label:
                continue
            if all(run.get(w + (s,), t) == t for s, t in enumerate(b.terminals)):
                break
        else:
            raise ValueError(f"no bundle from {state!r} fits the run at {w}")
        if depth == d:
            return Pattern.leaf(b.label, A.k)
        kids = []
        for s, t in enumerate(b.terminals):
            child = node.children[s] if node is not None else None
            kids.append(build(w + (s,), child, run.get(w + (s,), t), depth + 1))
        return Pattern(b.label, kids)

    return build(EPSILON, p, run[EPSILON], 1)


def accepted_blocks(A: RabinAutomaton, n: int) -> set:
    """Every block of size ``n`` accepted by the essential automaton ``A``."""
    _require_essential(A)
    level = {s: {Pattern.leaf(b.label, A.k) for b in A.outgoing(s)} for s in A.states}
    for _ in range(n - 1):
        new = {}
        for s in A.states:
            acc = set()
            for b in A.outgoing(s):
                acc.update(Pattern(b.label, kids)
                           for kids in product(*(level[t] for t in b.terminals)))
            new[s] = acc
        level = new
    return set().union(*level.values()) if level else set()


def accepted_patterns(A: RabinAutomaton, max_height: int) -> set:
    """Every full-tree-pattern of height at most ``max_height`` accepted by ``A``."""
    _require_essential(A)
    level = {s: set() for s in A.states}
    for _ in range(max_height):
        new = {}
        for s in A.states:
            acc = {Pattern.leaf(b.label, A.k) for b in A.outgoing(s)}
            for b in A.outgoing(s):
                acc.update(Pattern(b.label, kids)
                           for kids in product(*(level[t] for t in b.terminals)))
            new[s] = acc
        level = new
    return set().union(*level.values()) if level else set()


def join(A1: RabinAutomaton, A2: RabinAutomaton) -> RabinAutomaton:
    """Product automaton presenting the intersection of both shifts (essentialized)."""
    if A1.k != A2.k:
        raise MismatchError(f"arity mismatch: {A1.k} vs {A2.k}")
    alphabet = union_alphabet(A1.alphabet, A2.alphabet)
    bundles = []
    for a in alphabet:
        for b1 in A1.with_label(a):
            for b2 in A2.with_label(a):
                bundles.append(((b1.state, b2.state), a,
                                tuple(zip(b1.terminals, b2.terminals))))
    used = {b[0] for b in bundles} | {t for b in bundles for t in b[2]}
    states = sorted(used, key=lambda st: (A1.state_index(st[0]), A2.state_index(st[1])))
    return essentialize(RabinAutomaton(A1.k, alphabet, states, bundles))


class SubsetOperator:
    """Bottom-up image of a tuple of state sets under one letter.

    ``apply(a, (P_0, ..., P_{k-1}))`` is the set of states ``s`` having a
    bundle ``(s; a; s_0, ..., s_{k-1})`` with every ``s_i`` in ``P_i``.
    Sets are bitmasks over the state order of the automaton.
    """

    def __init__(self, A: RabinAutomaton):
        self.A = A
        self.k = A.k
        self.full = (1 << len(A.states)) - 1
        # Per letter and initial state, the terminal sequences as a trie of bits;
        # the last level is a plain mask of allowed final terminals.
        self._tries = {}
        for a in A.alphabet:
            rows = {}
            for b in A.with_label(a):
                init = 1 << A.state_index(b.state)
                *path, last = (1 << A.state_index(t) for t in b.terminals)
                if not path:
                    rows[init] = rows.get(init, 0) | last
                    continue
                node = rows.setdefault(init, {})
                for bit in path[:-1]:
                    node = node.setdefault(bit, {})
                node[path[-1]] = node.get(path[-1], 0) | last
            self._tries[a] = list(rows.items())
        self._cache = {}

    def _hit(self, node, masks, j) -> bool:
        if j == self.k - 1:
            return bool(node & masks[j])
        m = masks[j]
        return any(bit & m and self._hit(sub, masks, j + 1) for bit, sub in node.items())

    def apply(self, a, masks: tuple) -> int:
        key = (a, masks)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        out = 0
        for init, trie in self._tries[a]:
            if self._hit(trie, masks, 0):
                out |= init
        self._cache[key] = out
        return out

    def to_set(self, mask: int) -> frozenset:
        return frozenset(s for i, s in enumerate(self.A.states) if mask >> i & 1)

    def sort_key(self, mask: int):
        return tuple(i for i in range(len(self.A.states)) if mask >> i & 1)

    def closure(self, seeds: Iterable[int], keep_empty: bool, budget=None):
        """Saturate ``seeds`` under :meth:`apply`.

        Returns the discovered masks in discovery order and the transition
        table ``(letter, masks) -> mask``.  Empty results are dropped unless
        ``keep_empty``.
        """
        k = self.A.k
        known = []
        index = {}
        for m in seeds:
            if m not in index:
                index[m] = len(known)
                known.append(m)
        table = {}
        i = 0
        while i < len(known):
            for combo in _combos_with_max(i, k):
                masks = tuple(known[j] for j in combo)
                for a in self.A.alphabet:
                    r = self.apply(a, masks)
                    if r == 0 and not keep_empty:
                        continue
                    table[a, masks] = r
                    if r not in index:
                        index[r] = len(known)
                        known.append(r)
                        check_budget(len(known), budget, "subset construction")
            i += 1
        return known, table


def _combos_with_max(i: int, k: int):
    """Index tuples of length ``k`` over ``0..i`` that contain ``i``."""
    for first in range(k):
        for head in product(range(i), repeat=first):
            for tail in product(range(i + 1), repeat=k - first - 1):
                yield head + (i,) + tail


def codeterminize(A: RabinAutomaton, budget=None) -> RabinAutomaton:
    """Co-deterministic automaton presenting the same shift.

    States are the nonempty state sets reachable bottom-up from the set of
    all states; the output is essentialized.
    """
    _require_essential(A)
    if not A.states:
        return A
    op = SubsetOperator(A)
    known, table = op.closure([op.full], keep_empty=False, budget=budget)
    order = sorted(known, key=op.sort_key)
    states = [op.to_set(m) for m in order]
    bundles = [(op.to_set(r), a, tuple(op.to_set(m) for m in masks))
               for (a, masks), r in table.items()]
    return essentialize(RabinAutomaton(A.k, A.alphabet, states, bundles))


def _survivors(A: RabinAutomaton, m: MooreColoring):
    """Synchronous greatest-fixpoint rounds on (machine state, automaton state) pairs.

    Yields the surviving relation after each round; round ``j`` keeps exactly
    the pairs whose size-``j`` truncation is accepted from that automaton state.
    """
    rel = {(q, s) for q in m.states for s in A.states}
    while True:
        new = set()
        for q, s in rel:
            a = m.output[q]
            kids = [m.step[q, i] for i in range(A.k)]
            for b in A.outgoing(s):
                if b.label == a and all((kq, t) in rel for kq, t in zip(kids, b.terminals)):
                    new.add((q, s))
                    break
        yield new
        if new == rel:
            return
        rel = new


def rejection_depth(A: RabinAutomaton, m: MooreColoring) -> int | None:
    """Least ``d`` whose size-``d`` truncation of ``m`` is rejected, or ``None`` if ``m`` is accepted."""
    _require_essential(A)
    if m.k != A.k:
        raise MismatchError(f"arity mismatch: {m.k} vs {A.k}")
    depth = 0
    for rel in _survivors(A, m):
        depth += 1
        if not any(q == m.start for q, _ in rel):
            return depth
    return None


def member_moore(A: RabinAutomaton, m: MooreColoring) -> bool:
    return rejection_depth(A, m) is None
