import pytest

from conftest import DATA, mono_automaton
from treeshift.cli import main
from treeshift.formats import load, loads


@pytest.fixture
def cli(monkeypatch, capsys):
    monkeypatch.chdir(DATA)

    def call(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return call


def test_documented_examples(cli):
    assert cli("full", "mono.rabin") == (0, "false\nwitness: 0(0,1)\n", "")
    assert cli("equal", "mono.rabin", "mono_canonical.rabin")[:2] == (0, "true\n")
    assert cli("surjective", "id.ca", "full.sft", "full.rabin")[:2] == (0, "true\n")


def test_decisions(cli):
    assert cli("surjective", "const0.ca", "full.sft", "full.rabin")[1] == "false\nwitness: 1\n"
    assert cli("contained", "full.rabin", "mono.rabin")[1] == "false\nwitness: 0(0,1)\n"
    assert cli("contained", "mono.rabin", "full.rabin")[1] == "true\n"
    assert cli("equal", "full.sft@xor.ca", "full.rabin")[1] == "true\n"
    assert cli("equal", "mono.sft", "mono.rabin")[1] == "true\n"
    assert cli("surjective", "id.ca", "mono.rabin", "mono.sft")[1] == "true\n"


def test_acceptance_and_membership(cli):
    assert cli("accepts", "mono.rabin", "p011.pattern")[1] == "true\n"
    assert cli("accepts", "mono.rabin", "--term", "1(0,0)")[1] == "true\n"
    assert cli("accepts", "mono_complement.fta", "--term", "0(0,1)")[1] == "true\n"
    assert cli("member", "mono.rabin", "zeros.moore")[1] == "true\n"
    assert cli("member", "mono.rabin", "mixed.moore")[1] == "false\ndepth: 2\n"


def test_emptiness_and_samples(cli):
    assert cli("empty", "mono.rabin")[1] == "false\n"
    assert cli("empty", "mono.sft")[1] == "false\n"
    assert cli("empty", "mono_complement.fta", "--method", "naive")[1] == "false\nwitness: 0(0,1)\n"
    assert cli("sample", "mono_complement.fta")[1] == "0(0,1)\n"


def test_empty_sample_prints_none(cli, tmp_path):
    code, out, _ = cli("complement", "full.rabin")
    path = tmp_path / "nothing.fta"
    path.write_text(out)
    assert cli("sample", str(path))[1] == "none\n"
    assert cli("empty", str(path))[1] == "true\n"


def test_blocks(cli):
    code, out, _ = cli("blocks", "mono.sft", "2", "--scope", "local")
    assert out.split() == ["0(0,0)", "0(1,1)", "1(0,0)", "1(1,1)"]
    assert len(cli("blocks", "mono.sft", "3")[1].split()) == 16


def test_document_outputs(cli):
    code, out, _ = cli("essentialize", "mono.rabin")
    assert loads(out) == mono_automaton()
    code, out, _ = cli("classify", "mono.rabin")
    assert out == "deterministic: false\ncodeterministic: true\ncocomplete: false\n"
    for argv in (("codet", "mono.rabin"), ("present", "mono.sft"), ("image", "xor.ca", "full.sft"),
                 ("subset", "mono.rabin", "--mode", "complement"), ("compose", "xor.ca", "id.ca"),
                 ("join", "mono.rabin", "full.rabin")):
        code, out, err = cli(*argv)
        assert code == 0, err
        loads(out)


def test_cover_files(cli, tmp_path):
    z, t = tmp_path / "z.sft", tmp_path / "t.ca"
    assert cli("cover", "mono.rabin", "--sft-out", str(z), "--ca-out", str(t)) == (0, "", "")
    assert len(load(z).alphabet) == 4
    assert cli("equal", f"{z}@{t}", "mono.rabin")[1] == "true\n"
    code, out, _ = cli("cover", "mono.rabin")
    first, second = out.split("---\n")
    assert loads(first) == load(z) and loads(second).rule == load(t).rule
    assert cli("cover", "mono.rabin", "--sft-out", str(z))[0] == 2


def test_usage_errors(cli):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    assert cli("full", "missing.rabin")[0] == 2
    assert cli("full", "mono.sft")[0] == 2
    assert cli("accepts", "mono.rabin")[0] == 2


def test_parse_errors(cli, tmp_path):
    bad = tmp_path / "bad.rabin"
    bad.write_text("rabin\nsigma 2\n")
    assert cli("full", str(bad))[0] == 3
    assert cli("accepts", "mono.rabin", "--term", "0(1")[0] == 3


def test_semantic_errors(cli, tmp_path):
    dying = tmp_path / "dying.rabin"
    dying.write_text("rabin\nsigma 2\nalphabet 0 1\nstates a b\nbundle a 0 b b\n")
    code, _, err = cli("full", str(dying))
    assert code == 4 and "error" in err
    unary = tmp_path / "unary.rabin"
    unary.write_text("rabin\nsigma 1\nalphabet 0 1\nstates u\nbundle u 0 u\nbundle u 1 u\n")
    assert cli("equal", str(unary), "mono.rabin")[0] == 4
    assert cli("blocks", "mono.sft", "0")[0] == 4


def test_budget_exceeded(cli):
    assert cli("--budget", "1", "equal", "mono.rabin", "full.rabin")[0] == 5
    assert cli("--budget", "100", "compose", "xor.ca", "xor.ca")[0] == 5
