import pytest

from swapbribe import gen_x3c_borda_shift, parse_instance
from swapbribe.cli import main
from swapbribe.reductions import X3CInstance

WINNING = """\
candidates a p
preferred p
rule plurality
budget 3
vote a p
swapprices 1
0 3
x 0
"""

SHIFT_BORDA = """\
candidates a b p
preferred p
rule borda
budget 2
vote a p b
vote b a p
shiftprices 1 1
shiftprices 2 1 1
"""


@pytest.fixture
def instance_file(tmp_path):
    def write(text, name="instance.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def test_winners_verb(capsys, instance_file):
    assert main(["winners", instance_file(WINNING)]) == 0
    assert capsys.readouterr().out.strip() == "a"


def test_solve_feasible_and_infeasible(capsys, instance_file):
    path = instance_file(WINNING)
    assert main(["solve", path, "--method", "plurality-veto"]) == 0
    out = capsys.readouterr().out
    assert "cost 3" in out and "replay verified" in out

    tight = instance_file(WINNING.replace("budget 3", "budget 2"), "b.txt")
    assert main(["solve", tight, "--method", "exact"]) == 1


def test_solve_writes_checkable_documents(tmp_path, instance_file):
    path = instance_file(WINNING)
    out = tmp_path / "solution.txt"
    assert main(["solve", path, "--method", "exact", "-o", str(out)]) == 0
    assert main(["check", path, str(out)]) == 0
    tampered = out.read_text().replace("cost 3", "cost 2")
    bad = tmp_path / "tampered.txt"
    bad.write_text(tampered)
    assert main(["check", path, str(bad)]) == 2


def test_parse_error_exit_code(capsys, instance_file):
    path = instance_file("candidates a a\npreferred a\nrule borda\nbudget 0\n")
    assert main(["winners", path]) == 2
    assert "input error" in capsys.readouterr().err


def test_capacity_exit_code(instance_file):
    lines = ["candidates " + " ".join(f"c{i}" for i in range(9)),
             "preferred c0", "rule borda", "budget 0",
             "vote " + " ".join(f"c{i}" for i in range(9)),
             "swapprices 1"] + ["0 " * 8 + "0"] * 9
    path = instance_file("\n".join(lines) + "\n")
    assert main(["solve", path, "--method", "exact"]) == 3


def test_approx_verbs(capsys, instance_file):
    path = instance_file(SHIFT_BORDA)
    assert main(["approx", path]) == 0
    out = capsys.readouterr().out
    assert "solver borda-shift-2approx" in out

    # feasible for the oracle but invisible to the approximation
    doc = """\
candidates p x y
preferred p
rule borda
budget 1
vote x p y
vote y p x
vote x y p
shiftprices 1 1
shiftprices 2 1
shiftprices 3 9 9
"""
    tricky = instance_file(doc, "tricky.txt")
    assert main(["solve", tricky, "--method", "exact"]) == 0
    capsys.readouterr()
    assert main(["approx", tricky]) == 4
    assert "inconclusive" in capsys.readouterr().err


def test_gen_emits_labeled_round_trippable_instance(capsys, tmp_path):
    x3c = X3CInstance.of(2, [f"b{i}" for i in range(1, 7)],
                         [(0, 1, 2), (3, 4, 5), (0, 3, 4)])
    src = tmp_path / "src.txt"
    from swapbribe.serialize import serialize_x3c

    src.write_text(serialize_x3c(x3c))
    assert main(["gen", "--reduction", "x3c-borda-shift",
                 "--source", str(src)]) == 0
    out = capsys.readouterr().out
    assert "# expected-feasible: yes" in out
    parsed = parse_instance(out)
    assert parsed == gen_x3c_borda_shift(x3c).instance


def test_gen_random_is_seed_deterministic(capsys):
    assert main(["gen", "--reduction", "bb-kapproval", "--size", "3",
                 "--cover", "2", "--seed", "5"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "--reduction", "bb-kapproval", "--size", "3",
                 "--cover", "2", "--seed", "5"]) == 0
    assert capsys.readouterr().out == first


def test_reduce_pw_verb(capsys, instance_file):
    pw = ("candidates a b p\npreferred p\nrule kapproval 1\n"
          "pvote a>b\npvote\n")
    path = instance_file(pw, "pw.txt")
    assert main(["reduce-pw", path]) == 0
    out = capsys.readouterr().out
    inst = parse_instance(out)
    assert inst.budget == 0
    assert inst.election.n == 2
