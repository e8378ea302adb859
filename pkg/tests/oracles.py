"""Independent reference implementations used as test oracles.

Nothing here calls the library's acceptance, subset, emptiness or image
code.  Patterns are handled as plain ``{word: letter}`` dictionaries and
runs are found top-down from the root, whereas the library computes
feasible state sets bottom-up.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

from treeshift.core import Pattern
from treeshift.fta import FiniteTreeAutomaton
from treeshift.rabin import RabinAutomaton

ALPHABET = ("0", "1")
K = 2


# -- trees and labelings ------------------------------------------------------

def ball(n, k=K):
    """Words of length < n."""
    words = [()]
    frontier = [()]
    for _ in range(n - 1):
        frontier = [w + (s,) for w in frontier for s in range(k)]
        words += frontier
    return frozenset(words)


def full_supports(max_height, k=K):
    """All finite full subtrees of height <= max_height, grown leaf by leaf."""
    start = frozenset([()])
    seen = {start}
    todo = [start]
    while todo:
        T = todo.pop()
        for w in T:
            if len(w) + 1 < max_height and (w + (0,)) not in T:
                grown = T | {w + (s,) for s in range(k)}
                if grown not in seen:
                    seen.add(grown)
                    todo.append(grown)
    return seen


def children(w, k=K):
    return [w + (s,) for s in range(k)]


def boundary(T, k=K):
    return {c for w in T for c in children(w, k)} - set(T)


def labelings(T, alphabet=ALPHABET):
    T = sorted(T)
    for letters in product(alphabet, repeat=len(T)):
        yield dict(zip(T, letters))


def to_pattern(labels, k=K):
    return Pattern.from_labels(labels, k)


def all_patterns(max_height, alphabet=ALPHABET, k=K):
    for T in full_supports(max_height, k):
        for f in labelings(T, alphabet):
            yield f


# -- runs by backtracking -----------------------------------------------------

@lru_cache(maxsize=None)
def _by_source(A: RabinAutomaton):
    index = {}
    for b in A.bundles:
        index.setdefault((b.state, b.label), []).append(tuple(b.terminals))
    return index


def _search(by_source, f, roots, frontier_ok, k):
    """Is there a state map on ``f``'s support (and its children) respecting the bundles?

    ``by_source`` maps ``(state, letter)`` to terminal sequences; vertices
    just outside the support only have to satisfy ``frontier_ok``.  Runs are
    chosen top-down; the subtrees below a vertex are independent once its
    state is fixed, so answers are memoized per (vertex, state).
    """
    memo = {}

    def ok(w, s):
        key = (w, s)
        if key not in memo:
            memo[key] = any(
                all(ok(c, t) if c in f else frontier_ok(t) for c, t in zip(children(w, k), ts))
                for ts in by_source.get((s, f[w]), ()))
        return memo[key]

    return any(ok((), r) for r in roots)


def rabin_accepts(A: RabinAutomaton, f) -> bool:
    """Acceptance with the sub-bundle relaxation at missing children."""
    return _search(_by_source(A), f, A.states, lambda t: True, A.k)


def fta_accepts(G: FiniteTreeAutomaton, f) -> bool:
    return _search(_by_source(G.base), f, G.initials, lambda t: t == G.final, G.k)


def accepted_blocks(A: RabinAutomaton, n):
    """Frozen label-sets of the size-n blocks accepted by an essential automaton."""
    return {freeze(f) for f in labelings(ball(n, A.k), A.alphabet) if rabin_accepts(A, f)}


def freeze(f):
    return frozenset(f.items())


# -- random automata ----------------------------------------------------------

def random_essential(rng: random.Random, max_states=3, alphabet=ALPHABET, k=K) -> RabinAutomaton:
    """An essential automaton: every state starts at least one bundle."""
    n = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(n)]
    density = rng.uniform(0.05, 0.5)
    bundles = {(s, a, ts) for s in states for a in alphabet for ts in product(states, repeat=k)
               if rng.random() < density}
    for s in states:
        if not any(b[0] == s for b in bundles):
            bundles.add((s, rng.choice(alphabet), tuple(rng.choice(states) for _ in range(k))))
    return RabinAutomaton(k, alphabet, states, bundles)


def random_fta(rng: random.Random, max_states=3, alphabet=ALPHABET, k=K) -> FiniteTreeAutomaton:
    n = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(n)]
    final = rng.choice(states)
    density = rng.uniform(0.0, 0.3)
    bundles = {(s, a, ts) for s in states for a in alphabet for ts in product(states, repeat=k)
               if rng.random() < density}
    for s in states:
        if s != final and not any(b[0] == s for b in bundles):
            bundles.add((s, rng.choice(alphabet), tuple(rng.choice(states) for _ in range(k))))
    initials = {s for s in states if rng.random() < 0.5}
    return FiniteTreeAutomaton(RabinAutomaton(k, alphabet, states, bundles), initials, final)


# -- shifts of finite type and cellular automata ------------------------------

def locally_admissible(f, memory, forbidden_labels, k=K):
    """No forbidden block (given as label dicts on the memory ball) sits inside ``f``."""
    window = ball(memory, k)
    for w in f:
        if all(w + u in f for u in window):
            seen = {u: f[w + u] for u in window}
            if seen in forbidden_labels:
                return False
    return True


def apply_rule(rule_labels, memory, f, k=K):
    """Image of ``f`` under a local rule given as ``{frozen block labels: letter}``.

    The image is defined at every vertex whose memory ball lies inside ``f``.
    """
    window = ball(memory, k)
    out = {}
    for w in f:
        if all(w + u in f for u in window):
            out[w] = rule_labels[freeze({u: f[w + u] for u in window})]
    return out


def xor_rule():
    return {freeze({(): a, (0,): b, (1,): c}): str(int(b) ^ int(c))
            for a in ALPHABET for b in ALPHABET for c in ALPHABET}


def mono_block_ok(f):
    """Monochromatic-children condition checked straight from its definition."""
    return all(f[w + (0,)] == f[w + (1,)] for w in f if w + (0,) in f)
