"""Line-oriented text documents for every object the CLI reads or writes.

The first meaningful line is the kind tag (``rabin``, ``fta``, ``sft``,
``ca``, ``pattern`` or ``moore``); ``#`` starts a comment.  Writers emit a
canonical form, so reading a written document and writing it again gives
the same bytes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ca import CellularAutomaton
from .core import MooreColoring, Pattern, letter_order, parse_term, pattern_key
from .errors import ParseError, TreeShiftError
from .fta import FiniteTreeAutomaton
from .rabin import RabinAutomaton
from .sft import SFT

KINDS = ("rabin", "fta", "sft", "ca", "pattern", "moore")


@dataclass(frozen=True)
class PatternDocument:
    k: int
    alphabet: tuple
    pattern: Pattern


# -- writing -----------------------------------------------------------------

def state_token(s) -> str:
    if isinstance(s, str):
        return s
    if isinstance(s, Pattern):
        return str(s)
    if isinstance(s, frozenset):
        return "{" + ",".join(sorted(state_token(x) for x in s)) + "}"
    if isinstance(s, tuple):
        return "(" + ",".join(state_token(x) for x in s) + ")"
    return str(s)


def _state_names(states) -> dict:
    names = {s: state_token(s) for s in states}
    tokens = list(names.values())
    clean = len(set(tokens)) == len(tokens) and all(
        t and not any(c.isspace() or c == "#" for c in t) for t in tokens)
    if clean:
        return names
    return {s: f"q{i}" for i, s in enumerate(states)}


def _rabin_lines(A: RabinAutomaton, names: dict) -> list:
    lines = [f"sigma {A.k}", "alphabet " + " ".join(A.alphabet),
             " ".join(["states"] + [names[s] for s in A.states])]
    for b in A.bundles:
        lines.append(" ".join(["bundle", names[b.state], b.label] + [names[t] for t in b.terminals]))
    return lines


def _sorted(patterns, alphabet):
    order = letter_order(alphabet)
    return sorted(patterns, key=lambda p: pattern_key(p, order))


def dumps(obj) -> str:
    if isinstance(obj, RabinAutomaton):
        lines = ["rabin"] + _rabin_lines(obj, _state_names(obj.states))
    elif isinstance(obj, FiniteTreeAutomaton):
        names = _state_names(obj.base.states)
        lines = ["fta"] + _rabin_lines(obj.base, names)
        lines.append(" ".join(["initial"] + [names[s] for s in obj.sorted_initials()]))
        lines.append(f"final {names[obj.final]}")
    elif isinstance(obj, SFT):
        lines = ["sft", f"sigma {obj.k}", "alphabet " + " ".join(obj.alphabet), f"memory {obj.memory}"]
        lines += [f"forbid {q}" for q in _sorted(obj.forbidden, obj.alphabet)]
    elif isinstance(obj, CellularAutomaton):
        lines = ["ca", f"sigma {obj.k}", "alphabet-in " + " ".join(obj.in_alphabet),
                 "alphabet-out " + " ".join(obj.out_alphabet), f"memory {obj.memory}"]
        lines += [f"rule {b} {obj.rule[b]}" for b in _sorted(obj.rule, obj.in_alphabet)]
    elif isinstance(obj, PatternDocument):
        lines = ["pattern", f"sigma {obj.k}", "alphabet " + " ".join(obj.alphabet), f"term {obj.pattern}"]
    elif isinstance(obj, MooreColoring):
        names = _state_names(obj.states)
        lines = ["moore", f"sigma {obj.k}", "alphabet " + " ".join(obj.alphabet),
                 " ".join(["states"] + [names[q] for q in obj.states]), f"start {names[obj.start]}"]
        for q in obj.states:
            for s in range(obj.k):
                lines.append(f"step {names[q]} {s} {names[obj.step[q, s]]}")
        lines += [f"out {names[q]} {obj.output[q]}" for q in obj.states]
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def dump(obj, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(obj))


# -- reading -----------------------------------------------------------------

def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


class _Reader:
    def __init__(self, text):
        lines = list(_lines(text))
        if not lines:
            raise ParseError("empty document")
        self.kind = lines[0][1]
        if self.kind not in KINDS:
            raise ParseError(f"line {lines[0][0]}: unknown document kind {self.kind!r}")
        self.body = lines[1:]
        self.single = {}
        self.multi = {}

    def collect(self, single, multi):
        for lineno, line in self.body:
            key, _, rest = line.partition(" ")
            rest = rest.strip()
            if key in single:
                if key in self.single:
                    raise ParseError(f"line {lineno}: duplicate {key!r}")
                self.single[key] = (lineno, rest)
            elif key in multi:
                self.multi.setdefault(key, []).append((lineno, rest))
            else:
                raise ParseError(f"line {lineno}: unexpected keyword {key!r} in {self.kind} document")

    def need(self, key):
        if key not in self.single:
            raise ParseError(f"{self.kind} document lacks a {key!r} line")
        return self.single[key][1]

    def integer(self, key):
        text = self.need(key)
        try:
            value = int(text)
        except ValueError:
            raise ParseError(f"{key!r} expects an integer, got {text!r}") from None
        if value < 1:
            raise ParseError(f"{key!r} must be positive")
        return value

    def tokens(self, key):
        return tuple(self.need(key).split())


def _build(fn, *args):
    try:
        return fn(*args)
    except TreeShiftError:
        raise
    except (ValueError, KeyError) as exc:
        raise ParseError(str(exc)) from exc


def _read_rabin(r: _Reader) -> RabinAutomaton:
    k = r.integer("sigma")
    alphabet = r.tokens("alphabet")
    states = r.tokens("states")
    bundles = []
    for lineno, rest in r.multi.get("bundle", []):
        parts = rest.split()
        if len(parts) != k + 2:
            raise ParseError(f"line {lineno}: a bundle needs a state, a letter and {k} terminal states")
        bundles.append((parts[0], parts[1], tuple(parts[2:])))
    return _build(RabinAutomaton, k, alphabet, states, bundles)


def loads(text: str):
    r = _Reader(text)
    if r.kind == "rabin":
        r.collect({"sigma", "alphabet", "states"}, {"bundle"})
        return _read_rabin(r)
    if r.kind == "fta":
        r.collect({"sigma", "alphabet", "states", "initial", "final"}, {"bundle"})
        base = _read_rabin(r)
        return _build(FiniteTreeAutomaton, base, frozenset(r.tokens("initial")), r.need("final"))
    if r.kind == "sft":
        r.collect({"sigma", "alphabet", "memory"}, {"forbid"})
        k, alphabet = r.integer("sigma"), r.tokens("alphabet")
        forbidden = [parse_term(rest, alphabet, k) for _, rest in r.multi.get("forbid", [])]
        return _build(SFT, alphabet, k, r.integer("memory"), frozenset(forbidden))
    if r.kind == "ca":
        r.collect({"sigma", "alphabet-in", "alphabet-out", "memory"}, {"rule"})
        k = r.integer("sigma")
        ain, aout = r.tokens("alphabet-in"), r.tokens("alphabet-out")
        rule = {}
        for lineno, rest in r.multi.get("rule", []):
            term, _, letter = rest.rpartition(" ")
            if not term:
                raise ParseError(f"line {lineno}: a rule needs a block and a letter")
            block = parse_term(term, ain, k)
            if block in rule:
                raise ParseError(f"line {lineno}: duplicate rule for {block}")
            rule[block] = letter
        return _build(CellularAutomaton, ain, aout, k, r.integer("memory"), rule)
    if r.kind == "pattern":
        r.collect({"sigma", "alphabet", "term"}, set())
        k, alphabet = r.integer("sigma"), r.tokens("alphabet")
        return PatternDocument(k, alphabet, parse_term(r.need("term"), alphabet, k))
    r.collect({"sigma", "alphabet", "states", "start"}, {"step", "out"})
    k, alphabet = r.integer("sigma"), r.tokens("alphabet")
    step, output = {}, {}
    for lineno, rest in r.multi.get("step", []):
        parts = rest.split()
        if len(parts) != 3 or not parts[1].isdigit():
            raise ParseError(f"line {lineno}: step expects '<state> <direction> <state>'")
        step[parts[0], int(parts[1])] = parts[2]
    for lineno, rest in r.multi.get("out", []):
        parts = rest.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: out expects '<state> <letter>'")
        output[parts[0]] = parts[1]
    return _build(MooreColoring, k, alphabet, r.tokens("states"), r.need("start"), step, output)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
