import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from conftest import A2, mono_automaton, mono_sft
from test_ca import random_ca
from test_core import parity_machine, patterns
from treeshift.core import iter_blocks, parse_term
from treeshift.errors import ParseError
from treeshift.formats import PatternDocument, dump, dumps, load, loads
from treeshift.fta import COMPLEMENT, LANGUAGE, complement, fta_accepts, subset_fta
from treeshift.rabin import codeterminize, join
from treeshift.sft import SFT


def round_trip(obj):
    text = dumps(obj)
    again = loads(text)
    assert dumps(again) == text
    return again


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_rabin_round_trip(seed):
    A = O.random_essential(random.Random(seed))
    assert round_trip(A) == A


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_fta_round_trip_keeps_the_language(seed):
    A = O.random_essential(random.Random(seed), max_states=2)
    G = subset_fta(A, COMPLEMENT)
    H = round_trip(G)
    for p in O.all_patterns(2):
        assert O.fta_accepts(H, p) == fta_accepts(G, O.to_pattern(p))


@settings(max_examples=40, deadline=None)
@given(st.sets(st.sampled_from(iter_blocks(A2, 2, 2))))
def test_sft_round_trip(forbidden):
    X = SFT(A2, 2, 2, frozenset(forbidden))
    assert round_trip(X) == X


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([1, 2]))
def test_ca_round_trip(seed, memory):
    tau = random_ca(random.Random(seed), memory)
    back = round_trip(tau)
    assert back.rule == tau.rule and back.memory == memory


@given(patterns(max_depth=3))
def test_pattern_round_trip(p):
    doc = PatternDocument(2, A2, p)
    assert round_trip(doc) == doc


def test_moore_round_trip():
    m = parity_machine()
    back = round_trip(m)
    assert back.output == m.output and back.step == m.step


def test_structured_state_names_round_trip():
    M = mono_automaton()
    for A in (codeterminize(M), join(M, M), subset_fta(M, LANGUAGE), complement(subset_fta(M, LANGUAGE))):
        round_trip(A)


def test_comments_and_blank_lines_are_ignored():
    text = "# monochromatic children\nrabin\n\nsigma 2   # arity\nalphabet 0 1\nstates s0 s1\n" \
           "bundle s0 0 s0 s0\nbundle s0 0 s1 s1\nbundle s1 1 s0 s0\nbundle s1 1 s1 s1\n"
    assert loads(text) == mono_automaton()


def test_file_helpers(tmp_path):
    path = tmp_path / "mono.sft"
    dump(mono_sft(), path)
    assert load(path) == mono_sft()


@pytest.mark.parametrize("text", [
    "",
    "automaton\n",
    "rabin\nsigma 2\nalphabet 0 1\n",
    "rabin\nsigma two\nalphabet 0 1\nstates s\n",
    "rabin\nsigma 0\nalphabet 0 1\nstates s\n",
    "rabin\nsigma 2\nsigma 2\nalphabet 0 1\nstates s\n",
    "rabin\nsigma 2\nalphabet 0 1\nstates s\nbundle s 0 s\n",
    "rabin\nsigma 2\nalphabet 0 1\nstates s\nbundle s 0 t t\n",
    "rabin\nsigma 2\nalphabet 0 1\nstates s\ncolour s red\n",
    "sft\nsigma 2\nalphabet 0 1\nmemory 2\nforbid 0(1,\n",
    "ca\nsigma 2\nalphabet-in 0 1\nalphabet-out 0 1\nmemory 1\nrule 0 1\nrule 0 0\nrule 1 1\n",
    "ca\nsigma 2\nalphabet-in 0 1\nalphabet-out 0 1\nmemory 1\nrule 0\n",
    "moore\nsigma 2\nalphabet 0 1\nstates z\nstart z\nstep z left z\n",
    "pattern\nsigma 2\nalphabet 0 1\nterm 0(1)\n",
])
def test_malformed_documents(text):
    with pytest.raises(ParseError):
        loads(text)


def test_unserializable_object():
    with pytest.raises(TypeError):
        dumps(parse_term("0", A2, 2))
