import sys
from pathlib import Path

import pytest

from treeshift.core import Pattern, parse_term
from treeshift.rabin import RabinAutomaton, full_shift_automaton
from treeshift.sft import SFT

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"
A2 = ("0", "1")

_acceptance = {}


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def term():
    return lambda text, k=2, alphabet=A2: parse_term(text, alphabet, k)


def mono_automaton():
    """Two states; a vertex's children share one color, which may differ from the vertex."""
    return RabinAutomaton(2, A2, ["s0", "s1"],
                          [(f"s{a}", a, (f"s{b}",) * 2) for a in A2 for b in A2])


def mono_sft():
    forbidden = {Pattern(a, [Pattern.leaf(b, 2), Pattern.leaf(c, 2)])
                 for a in A2 for b in A2 for c in A2 if b != c}
    return SFT(A2, 2, 2, frozenset(forbidden))


def full_automaton():
    return full_shift_automaton(A2, 2)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::" in report.nodeid:
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        verdict = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
