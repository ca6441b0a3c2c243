from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest

from braidrover.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "name,argv",
    [
        ("wp_bcd", ["wp", "brgrig", "b c d"]),
        ("wp_a", ["wp", "brgrig", "a"]),
        ("sections_bcd", ["sections", "brgrig", "b c d"]),
        ("thomp_fig4", ["thomp", "eq", "[∧;(a,b);∧]", "[T;s1;(1,1,a,c);T]"]),
        ("homology_3_9", ["homology", "matching", "3", "9"]),
        ("axioms_brgrig", ["axioms", "brgrig", "--samples", "20", "--seed", "5"]),
        ("kseries", ["kseries", "--n-max", "1"]),
    ],
)
def test_machine_output_is_pinned(capsys, name, argv):
    code, out, _ = run(capsys, "--machine", *argv)
    assert out == (GOLDEN / f"{name}.jsonl").read_text(encoding="utf-8")


def test_wp_exit_codes(capsys):
    assert run(capsys, "wp", "brgrig", "b c d")[0] == 0
    code, out, _ = run(capsys, "wp", "brgrig", "a")
    assert code == 1 and "certificate: ∅" in out
    code, out, _ = run(capsys, "wp", "brgrig", "b")
    assert code == 1 and "certificate: 1" in out
    assert run(capsys, "wp", "zwrz", "a^-1 b a b a^-1 b^-1 a b^-1")[0] == 0


def test_wp_unknown_when_budget_runs_out(capsys, tmp_path):
    table = tmp_path / "free.table"
    table.write_text("group free\ndegree 2\ngen x = e | y, x\ngen y = e | x, y\n")
    code, out, _ = run(capsys, "wp", str(table), "x y x^-1 y^-1", "--budget", "1", "--depth", "3")
    assert code == 2 and "unknown (budget 1)" in out
    assert run(capsys, "wp", str(table), "x y x^-1 y^-1")[0] == 0


def test_parse_errors_exit_3(capsys):
    code, _, err = run(capsys, "wp", "brgrig", "a ? b")
    assert code == 3 and "column 3" in err
    assert run(capsys, "wp", "nosuch", "a")[0] == 3
    assert run(capsys, "thomp", "eq", "[∧;(a,b);∧]")[0] == 3
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 3


def test_sections_of_b_and_empty(capsys):
    _, out, _ = run(capsys, "sections", "brgrig", "b", "--depth", "1")
    assert out.strip() == "b = e(a, c)"
    _, out, _ = run(capsys, "sections", "brgrig", "")
    assert out.strip() == "1 = e(1, 1)"


def test_axioms_and_mutations(capsys):
    code, out, _ = run(capsys, "axioms", "braid", "-d", "2", "-d", "3", "--samples", "10", "--seed", "3")
    assert code == 0 and "seed: 3" in out and "[braid d=3] C2 pass=10" in out
    code, out, _ = run(capsys, "axioms", "brgrig", "--mutation", "no-embedding", "--samples", "40")
    assert code == 1
    assert run(capsys, "axioms", "brgrig", "-d", "3")[0] == 3


def test_axioms_reproducible(capsys):
    a = run(capsys, "axioms", "grig", "--samples", "15", "--seed", "8")[1]
    b = run(capsys, "axioms", "grig", "--samples", "15", "--seed", "8")[1]
    assert a == b


def test_thomp_ops(capsys):
    code, out, _ = run(capsys, "thomp", "eval", "[∧;(a,b);∧]", "[∧;(a,b);∧]^-1")
    assert code == 0 and out.strip().endswith("identity")
    code, out, _ = run(capsys, "thomp", "eval", "[∧;(a,b);∧]")
    assert code == 1
    code, out, _ = run(capsys, "thomp", "reduce", "[T;s1;(1,1,a,c);T]")
    assert out.splitlines()[0] == "[(,); e; (a, b); (,)]"
    code, out, _ = run(capsys, "thomp", "pi", "[∧;s1;(a,b);∧]")
    assert code == 0 and out.strip() == "[(,); (1 2); (a, b); (,)]"
    code, out, _ = run(capsys, "thomp", "eqmodz", "[1;b^2;1]", "[1;1;1]")
    assert code == 0
    code, out, _ = run(capsys, "thomp", "eqmodz", "[1;a b a;1]", "[1;1;1]")
    assert code == 1
    code, out, _ = run(capsys, "thomp", "purify", "[1;(a b)^-1;1]".replace("(a b)^-1", "b^-1 a^-1"))
    assert code == 0 and out.startswith("F = ")


def test_homology_file(capsys, tmp_path):
    f = tmp_path / "circle.txt"
    f.write_text("1 2\n2 3\n1 3\n")
    code, out, _ = run(capsys, "homology", "file", str(f))
    assert code == 0 and "dim 1: rank 1" in out
    _, out, _ = run(capsys, "homology", "matching", "2", "5")
    assert "acyclic" in out


def test_render(capsys, tmp_path):
    code, out, _ = run(capsys, "render", "triple", "[T;s1;(1,1,a,c);T]", "--dot")
    assert code == 0 and out.startswith("digraph triple")
    target = tmp_path / "m.dot"
    assert run(capsys, "render", "matching", "9", "1-2", "6-7", "-o", str(target))[0] == 0
    assert target.read_text().startswith("graph matching")
    assert run(capsys, "render", "matching", "4", "1-2", "2-3")[0] == 3


def test_kseries_reports_levels(capsys):
    code, out, _ = run(capsys, "kseries", "--n-max", "1")
    assert code == 0 and out.count("ok") == 4


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "braidrover.cli", "wp", "brgrig", "c b d"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "identity" in proc.stdout
