"""Command-line front end: ``treeshift <command> FILE...``.

Exit status: 0 success (including a ``false`` answer), 2 usage error,
3 parse error, 4 semantic error, 5 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import ca, decide, fta, rabin, sft
from .core import MooreColoring, parse_term, sort_patterns
from .errors import BudgetExceeded, ParseError, TreeShiftError
from .formats import PatternDocument, dump, dumps, load

EXIT_USAGE, EXIT_PARSE, EXIT_SEMANTIC, EXIT_BUDGET = 2, 3, 4, 5


class UsageError(Exception):
    pass


def _expect(obj, *types, path=""):
    if not isinstance(obj, types):
        names = " or ".join(t.__name__ for t in types)
        raise UsageError(f"{path}: expected a {names} document, got {type(obj).__name__}")
    return obj


def _load(path, *types):
    try:
        obj = load(path)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    return _expect(obj, *types, path=path) if types else obj


def _sofic(arg):
    """A sofic input: an automaton or SFT file, or ``SFT@CA`` for an image."""
    if "@" in arg:
        sft_path, ca_path = arg.split("@", 1)
        return (_load(sft_path, sft.SFT), _load(ca_path, ca.CellularAutomaton))
    return _load(arg, rabin.RabinAutomaton, sft.SFT)


def _verdict(v, out):
    out.append("true" if v.answer else "false")
    if v.witness is not None:
        out.append(f"witness: {v.witness}")


def _bool(flag):
    return "true" if flag else "false"


def run(args) -> list:
    """Execute a parsed command line; returns the output lines."""
    out = []
    budget = args.budget
    cmd = args.command
    if cmd == "essentialize":
        out.append(dumps(rabin.essentialize(_load(args.automaton, rabin.RabinAutomaton))))
    elif cmd == "classify":
        info = rabin.classify(_load(args.automaton, rabin.RabinAutomaton))
        out += [f"deterministic: {_bool(info.deterministic)}",
                f"codeterministic: {_bool(info.codeterministic)}",
                f"cocomplete: {_bool(info.cocomplete)}"]
    elif cmd == "codet":
        out.append(dumps(rabin.codeterminize(_load(args.automaton, rabin.RabinAutomaton), budget=budget)))
    elif cmd == "join":
        A1 = _load(args.left, rabin.RabinAutomaton)
        A2 = _load(args.right, rabin.RabinAutomaton)
        out.append(dumps(rabin.join(A1, A2)))
    elif cmd == "subset":
        A = _load(args.automaton, rabin.RabinAutomaton)
        out.append(dumps(fta.subset_fta(A, args.mode, budget=budget)))
    elif cmd == "complement":
        X = _load(args.automaton, rabin.RabinAutomaton, fta.FiniteTreeAutomaton)
        if isinstance(X, rabin.RabinAutomaton):
            out.append(dumps(fta.subset_fta(X, fta.COMPLEMENT, budget=budget)))
        else:
            out.append(dumps(fta.complement(X, budget=budget)))
    elif cmd == "empty":
        X = _load(args.input, rabin.RabinAutomaton, fta.FiniteTreeAutomaton, sft.SFT)
        if isinstance(X, rabin.RabinAutomaton):
            out.append(_bool(rabin.is_empty_shift(X)))
        elif isinstance(X, sft.SFT):
            out.append(_bool(sft.sft_is_empty(X)))
        else:
            empty = fta.fta_is_empty(X, args.method)
            out.append(_bool(empty))
            if not empty:
                out.append(f"witness: {fta.sample_accepted(X)}")
    elif cmd == "full":
        _verdict(decide.is_full(_load(args.automaton, rabin.RabinAutomaton), budget=budget), out)
    elif cmd == "sample":
        w = fta.sample_accepted(_load(args.automaton, fta.FiniteTreeAutomaton))
        out.append("none" if w is None else str(w))
    elif cmd == "accepts":
        X = _load(args.automaton, rabin.RabinAutomaton, fta.FiniteTreeAutomaton)
        if args.term is not None:
            p = parse_term(args.term, X.alphabet, X.k)
        elif args.pattern is not None:
            p = _load(args.pattern, PatternDocument).pattern
        else:
            raise UsageError("accepts needs a pattern file or --term")
        if isinstance(X, rabin.RabinAutomaton):
            out.append(_bool(rabin.accepts_pattern(X, p)))
        else:
            out.append(_bool(fta.fta_accepts(X, p)))
    elif cmd == "member":
        A = _load(args.automaton, rabin.RabinAutomaton)
        m = _load(args.coloring, MooreColoring)
        depth = rabin.rejection_depth(A, m)
        out.append(_bool(depth is None))
        if depth is not None:
            out.append(f"depth: {depth}")
    elif cmd == "blocks":
        X = _load(args.sft, sft.SFT)
        blocks = sft.admissible_blocks(X, args.size, args.scope)
        out += [str(p) for p in sort_patterns(blocks, X.alphabet)]
    elif cmd == "present":
        out.append(dumps(sft.canonical_presentation(_load(args.sft, sft.SFT))))
    elif cmd == "cover":
        Z, tau = ca.sft_cover(_load(args.automaton, rabin.RabinAutomaton))
        if args.sft_out or args.ca_out:
            if not (args.sft_out and args.ca_out):
                raise UsageError("cover needs both --sft-out and --ca-out")
            dump(Z, args.sft_out)
            dump(tau, args.ca_out)
        else:
            out += [dumps(Z), "---", dumps(tau)]
    elif cmd == "compose":
        t2 = _load(args.outer, ca.CellularAutomaton)
        t1 = _load(args.inner, ca.CellularAutomaton)
        out.append(dumps(ca.compose(t2, t1, budget=budget)))
    elif cmd == "image":
        tau = _load(args.ca, ca.CellularAutomaton)
        out.append(dumps(ca.image_automaton(tau, _load(args.sft, sft.SFT))))
    elif cmd == "equal":
        _verdict(decide.equal_sofic(_sofic(args.left), _sofic(args.right), budget=budget), out)
    elif cmd == "contained":
        _verdict(decide.contained_sofic(_sofic(args.left), _sofic(args.right), budget=budget), out)
    elif cmd == "surjective":
        tau = _load(args.ca, ca.CellularAutomaton)
        _verdict(decide.surjective(tau, _sofic(args.source), _sofic(args.target), budget=budget), out)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown command {cmd!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeshift",
        description="Sofic tree shifts, finite-tree automata and cellular automata on regular rooted trees.")
    parser.add_argument("--budget", type=int, default=None, metavar="MAX_STATES",
                        help="cap on states built by subset and product constructions")
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, help_text, *positional):
        p = sub.add_parser(name, help=help_text)
        for arg in positional:
            p.add_argument(arg)
        return p

    cmd("essentialize", "drop states that start no bundle", "automaton")
    cmd("classify", "report (co-)determinism and co-completeness", "automaton")
    cmd("codet", "co-deterministic presentation by subset construction", "automaton")
    cmd("join", "product automaton presenting the intersection", "left", "right")
    p = cmd("subset", "subset finite-tree automaton", "automaton")
    p.add_argument("--mode", choices=[fta.LANGUAGE, fta.COMPLEMENT], default=fta.LANGUAGE)
    cmd("complement", "complement finite-tree automaton of a Rabin automaton or FTA", "automaton")
    p = cmd("empty", "emptiness of a Rabin automaton, SFT or FTA", "input")
    p.add_argument("--method", choices=["fixpoint", "naive"], default="fixpoint")
    cmd("full", "is the shift the full shift?", "automaton")
    cmd("sample", "least accepted pattern of an FTA", "automaton")
    p = cmd("accepts", "does the automaton accept a pattern?", "automaton")
    p.add_argument("pattern", nargs="?")
    p.add_argument("--term", help="pattern given inline in term syntax")
    cmd("member", "is the configuration of a Moore coloring in the shift?", "automaton", "coloring")
    p = cmd("blocks", "admissible blocks of an SFT", "sft")
    p.add_argument("size", type=int)
    p.add_argument("--scope", choices=[sft.GLOBAL, sft.LOCAL], default=sft.GLOBAL)
    cmd("present", "canonical automaton of an SFT", "sft")
    p = cmd("cover", "SFT cover and label map of an automaton", "automaton")
    p.add_argument("--sft-out")
    p.add_argument("--ca-out")
    cmd("compose", "composite cellular automaton OUTER after INNER", "outer", "inner")
    cmd("image", "automaton presenting the image of an SFT", "ca", "sft")
    cmd("equal", "do two sofic shifts coincide?", "left", "right")
    cmd("contained", "is the first sofic shift inside the second?", "left", "right")
    cmd("surjective", "does the CA map SOURCE onto TARGET?", "ca", "source", "target")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        lines = run(args)
    except UsageError as exc:
        print(f"treeshift: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"treeshift: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"treeshift: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (TreeShiftError, ValueError, TypeError) as exc:
        print(f"treeshift: error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    text = "\n".join(line.rstrip("\n") for line in lines)
    if text:
        sys.stdout.write(text + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
