"""Finite-tree automata: Rabin automata with initial states and a final state.

A full-tree-pattern on ``T`` is accepted when a run on ``T+`` uses bundles
on ``T``, starts in an initial state and puts the final state on every
vertex of ``T+ \\ T``.  These automata recognize sets of full-tree-patterns
and are closed under complement, which drives the fullness, equality and
surjectivity procedures.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Hashable

from .core import EPSILON, Pattern, iter_patterns, letter_order, pattern_key
from .errors import MismatchError, NotEssentialError, check_budget
from .rabin import RabinAutomaton, SubsetOperator, _combos_with_max, _require_essential, classify

LANGUAGE = "language"
COMPLEMENT = "complement"


@dataclass(frozen=True)
class FiniteTreeAutomaton:
    base: RabinAutomaton
    initials: frozenset
    final: Hashable

    def __post_init__(self):
        object.__setattr__(self, "initials", frozenset(self.initials))
        states = set(self.base.states)
        if self.final not in states:
            raise ValueError(f"final state {self.final!r} is not a state")
        if not self.initials <= states:
            raise ValueError("initial states must be states of the base automaton")
        lazy = [s for s in self.base.states if s != self.final and not self.base.outgoing(s)]
        if lazy:
            raise NotEssentialError(f"non-final state {lazy[0]!r} starts no bundle")

    @property
    def k(self):
        return self.base.k

    @property
    def alphabet(self):
        return self.base.alphabet

    def sorted_initials(self) -> list:
        return sorted(self.initials, key=self.base.state_index)


def _check_pattern(G: FiniteTreeAutomaton, p: Pattern):
    if p.k != G.k:
        raise MismatchError(f"pattern arity {p.k} differs from automaton arity {G.k}")
    if not p.is_full():
        raise ValueError("finite-tree automata only read full-tree-patterns")
    extra = p.letters() - set(G.alphabet)
    if extra:
        raise MismatchError(f"pattern letters {sorted(extra)} are not in the automaton alphabet")


def fta_run(G: FiniteTreeAutomaton, p: Pattern) -> dict | None:
    """An accepting run on ``T+`` (least states and bundles first), or ``None``."""
    _check_pattern(G, p)
    A, F = G.base, G.final
    feas = {}

    def visit(w, node):
        if node.is_leaf:
            kids = [{F}] * A.k
        else:
            kids = [visit(w + (s,), c) for s, c in enumerate(node.children)]
        here = {b.state for b in A.with_label(node.label)
                if all(t in ks for t, ks in zip(b.terminals, kids))}
        feas[w] = here
        return here

    roots = visit(EPSILON, p) & G.initials
    if not roots:
        return None
    run = {}

    def assign(w, node, state):
        run[w] = state
        for b in A.outgoing(state):
            if b.label != node.label:
                continue
            if node.is_leaf:
                if all(t == F for t in b.terminals):
                    break
            elif all(t in feas[w + (s,)] for s, t in enumerate(b.terminals)):
                break
        for s, t in enumerate(b.terminals):
            if node.is_leaf:
                run[w + (s,)] = F
            else:
                assign(w + (s,), node.children[s], t)

    assign(EPSILON, p, min(roots, key=A.state_index))
    return run


def fta_accepts(G: FiniteTreeAutomaton, p: Pattern) -> bool:
    return fta_run(G, p) is not None


def subset_fta(A: RabinAutomaton, mode: str = LANGUAGE, budget=None) -> FiniteTreeAutomaton:
    """Co-deterministic finite-tree automaton built from state sets of ``A``.

    A state of the result is the set of states of ``A`` accepting the
    pattern read so far; the final state is the set of all states.  In
    ``language`` mode only nonempty sets are kept and all of them are
    initial, so the result accepts exactly the full-tree-patterns of the
    shift.  In ``complement`` mode the empty set is kept as the single
    initial state; the result is also co-complete and accepts exactly the
    patterns outside the shift.  Only sets reachable from the final state
    are built.
    """
    _require_essential(A)
    if mode not in (LANGUAGE, COMPLEMENT):
        raise ValueError(f"unknown mode {mode!r}")
    op = SubsetOperator(A)
    complement_mode = mode == COMPLEMENT
    seeds = [op.full, 0] if complement_mode else [op.full]
    known, table = op.closure(seeds, keep_empty=complement_mode, budget=budget)
    order = sorted(known, key=op.sort_key)
    states = [op.to_set(m) for m in order]
    bundles = [(op.to_set(r), a, tuple(op.to_set(m) for m in masks))
               for (a, masks), r in table.items()]
    base = RabinAutomaton(A.k, A.alphabet, states, bundles)
    final = op.to_set(op.full)
    if complement_mode:
        initials = {frozenset()}
    else:
        initials = {s for s in states if s}
    return FiniteTreeAutomaton(base, initials, final)


def _fresh_state(states, stem="sink"):
    taken = set(states)
    name = stem
    while name in taken:
        name += "'"
    return name


def complement(G: FiniteTreeAutomaton, budget=None) -> FiniteTreeAutomaton:
    """Automaton for the full-tree-patterns that ``G`` rejects.

    ``G`` must be co-deterministic.  It is first made co-complete with one
    fresh sink state, then its initial states are complemented.
    """
    A = G.base
    info = classify(A)
    if not info.codeterministic:
        raise ValueError("complement needs a co-deterministic finite-tree automaton")
    states = list(A.states)
    bundles = list(A.bundles)
    if not info.cocomplete:
        sink = _fresh_state(states)
        states.append(sink)
        check_budget(len(A.alphabet) * len(states) ** A.k, budget, "co-completion")
        covered = {(b.label, b.terminals) for b in bundles}
        for terms in product(states, repeat=A.k):
            for a in A.alphabet:
                if (a, terms) not in covered:
                    bundles.append((sink, a, terms))
    base = RabinAutomaton(A.k, A.alphabet, states, bundles)
    return FiniteTreeAutomaton(base, set(states) - G.initials, G.final)


def productive_heights(G: FiniteTreeAutomaton) -> dict:
    """For each state, the least height of a pattern with a run rooted there."""
    A, F = G.base, G.final
    heights = {}
    j = 0
    while True:
        j += 1
        new = {}
        for b in A.bundles:
            if b.state in heights or b.state in new:
                continue
            if all(t == F for t in b.terminals) or all(t in heights for t in b.terminals):
                new[b.state] = j
        if not new:
            return heights
        heights.update(new)


def fta_is_empty(G: FiniteTreeAutomaton, method: str = "fixpoint") -> bool:
    """Whether ``G`` accepts no full-tree-pattern.

    ``fixpoint`` saturates the set of productive states; ``naive`` tries
    every pattern of height up to the number of states.
    """
    if method == "fixpoint":
        heights = productive_heights(G)
        return not any(s in heights for s in G.initials)
    if method == "naive":
        bound = len(G.base.states)
        return not any(fta_accepts(G, p) for p in iter_patterns(G.alphabet, G.k, bound))
    raise ValueError(f"unknown emptiness method {method!r}")


def sample_accepted(G: FiniteTreeAutomaton) -> Pattern | None:
    """The accepted pattern of least height, least in term order among those."""
    A, F = G.base, G.final
    heights = productive_heights(G)
    starts = [s for s in G.initials if s in heights]
    if not starts:
        return None
    top = min(heights[s] for s in starts)
    order = letter_order(A.alphabet)

    def key(p):
        return pattern_key(p, order)

    best = {}
    for _ in range(top):
        new = {}
        for s in A.states:
            options = []
            for b in A.outgoing(s):
                if all(t == F for t in b.terminals):
                    options.append(Pattern.leaf(b.label, A.k))
                if all(t in best for t in b.terminals):
                    options.append(Pattern(b.label, [best[t] for t in b.terminals]))
            if options:
                new[s] = min(options, key=key)
        best = new
    return min((best[s] for s in starts if s in best), key=key)


def product_base(G1: FiniteTreeAutomaton, G2: FiniteTreeAutomaton, budget=None):
    """Join of two finite-tree automata restricted to pairs reachable from the final pair.

    Returns the base automaton and the final pair; the caller picks the
    initial pairs.  Both inputs must share arity and alphabet.
    """
    if G1.k != G2.k:
        raise MismatchError(f"arity mismatch: {G1.k} vs {G2.k}")
    if G1.alphabet != G2.alphabet:
        raise MismatchError("product needs identical alphabets")
    A1, A2 = G1.base, G2.base
    into1, into2 = {}, {}
    for b in A1.bundles:
        into1.setdefault((b.label, b.terminals), []).append(b.state)
    for b in A2.bundles:
        into2.setdefault((b.label, b.terminals), []).append(b.state)
    final = (G1.final, G2.final)
    known = [final]
    index = {final: 0}
    bundles = []
    i = 0
    while i < len(known):
        for combo in _combos_with_max(i, A1.k):
            terms = tuple(known[j] for j in combo)
            left = tuple(t[0] for t in terms)
            right = tuple(t[1] for t in terms)
            for a in A1.alphabet:
                for s1 in into1.get((a, left), ()):
                    for s2 in into2.get((a, right), ()):
                        pair = (s1, s2)
                        bundles.append((pair, a, terms))
                        if pair not in index:
                            index[pair] = len(known)
                            known.append(pair)
                            check_budget(len(known), budget, "product automaton")
        i += 1
    states = sorted(known, key=lambda st: (A1.state_index(st[0]), A2.state_index(st[1])))
    return RabinAutomaton(A1.k, A1.alphabet, states, bundles), final
