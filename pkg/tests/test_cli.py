"""End-to-end checks of the command line front end.

The golden files under tests/golden/ freeze the output format byte for
byte.  The values inside them are not trusted blindly: each one is pinned
independently by a library test (the schouten, d, dual, cotangent and
residual tables all appear in test_calculus / test_poisson /
test_dualpoisson with hand-derived expectations).
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from algebroids.cli import ModelError, load_model, main, parse_model, save_model

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
GOLDEN = HERE / "golden"


def fixture(name):
    return str(FIXTURES / name)


# (golden file, argv, expected exit code)
GOLDEN_RUNS = [
    ("check_tangent_r2.txt", ["check", "--model", fixture("tangent_r2.alg")], 0),
    ("check_so3.txt", ["check", "--model", fixture("so3.alg")], 0),
    ("check_broken.txt", ["check", "--model", fixture("broken_jacobi.alg")], 1),
    ("check_broken.json", ["check", "--model", fixture("broken_jacobi.alg"), "--json"], 1),
    ("poisson_check_so3.txt", ["poisson-check", "--model", fixture("poisson_so3.alg")], 0),
    ("poisson_check_broken.txt", ["poisson-check", "--model", fixture("poisson_r3_broken.alg")], 1),
    ("schouten_tangent_r3.txt", ["schouten", "--model", fixture("tangent_r3.alg"), "P", "Q"], 0),
    ("schouten_tangent_r3.json", ["schouten", "--model", fixture("tangent_r3.alg"), "P", "Q", "--json"], 0),
    ("d_tangent_r2_w.txt", ["d", "--model", fixture("tangent_r2.alg"), "w"], 0),
    ("d_so3_e3.txt", ["d", "--model", fixture("so3.alg"), "e3"], 0),
    ("bracket_tangent_r2.txt", ["bracket", "--model", fixture("tangent_r2.alg"), "V", "W"], 0),
    ("lie_so3_v1_e2.txt", ["lie", "--model", fixture("so3.alg"), "v1", "e2"], 0),
    ("dual_so3.txt", ["dual", "--model", fixture("so3.alg")], 0),
    ("dual_tangent_r2.txt", ["dual", "--model", fixture("tangent_r2.alg")], 0),
    ("dual_verify_so3.txt", ["dual-verify", "--model", fixture("so3.alg")], 0),
    ("dual_verify_broken_forced.txt", ["dual-verify", "--model", fixture("broken_jacobi.alg"), "--force"], 1),
    ("koszul_so3.txt", ["koszul", "--model", fixture("poisson_so3.alg"), "a", "b"], 0),
    ("koszul_r2.txt", ["koszul", "--model", fixture("poisson_r2.alg"), "a", "b"], 0),
    ("sharp_r2_a.txt", ["sharp", "--model", fixture("poisson_r2.alg"), "a"], 0),
    ("cotangent_so3.txt", ["cotangent", "--model", fixture("poisson_so3.alg")], 0),
    ("cotangent_broken_gate.txt", ["cotangent", "--model", fixture("poisson_r3_broken.alg")], 1),
    ("cotangent_broken_forced.txt", ["cotangent", "--model", fixture("poisson_r3_broken.alg"), "--force"], 0),
    ("lichnerowicz_r2.txt", ["lichnerowicz", "--model", fixture("poisson_r2.alg"), "f"], 0),
    ("reconstruct_so3.txt", ["reconstruct", "--model", fixture("so3.alg")], 0),
]


@pytest.mark.parametrize("golden,argv,code", GOLDEN_RUNS, ids=[run[0] for run in GOLDEN_RUNS])
def test_golden(golden, argv, code, capsys):
    assert main(argv) == code
    out = capsys.readouterr().out
    assert out.encode("utf-8") == (GOLDEN / golden).read_bytes()


def test_dual_gate_prints_the_axiom_report(capsys):
    # dual without --force refuses a broken algebroid with the same text
    # that check prints for it
    assert main(["dual", "--model", fixture("broken_jacobi.alg")]) == 1
    out = capsys.readouterr().out
    assert out.encode("utf-8") == (GOLDEN / "check_broken.txt").read_bytes()


def test_json_output_is_deterministic(capsys):
    argv = ["check", "--model", fixture("broken_jacobi.alg"), "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert payload["passed"] is False
    assert payload["jacobi"] == {"1,2,3": {"2": "1"}}


def test_pair_prints_a_bare_expression(capsys):
    assert main(["pair", "--model", fixture("tangent_r2.alg"), "u", "V"]) == 0
    assert capsys.readouterr().out == "x2\n"


def test_wedge_of_named_elements(capsys):
    assert main(["wedge", "--model", fixture("tangent_r2.alg"), "V", "W"]) == 0
    assert capsys.readouterr().out == "multivector\n[1,2] = x1\n"


def test_interior_prints_scalar_entries_with_empty_index(capsys):
    assert main(["interior", "--model", fixture("tangent_r2.alg"), "V", "u"]) == 0
    assert capsys.readouterr().out == "form\n[] = x2\n"


def test_module_entry_point_propagates_exit_codes():
    result = subprocess.run(
        [sys.executable, "-m", "algebroids.cli", "check", "--model", fixture("broken_jacobi.alg")],
        capture_output=True,
        cwd=str(HERE.parent),
    )
    assert result.returncode == 1
    assert result.stdout == (GOLDEN / "check_broken.txt").read_bytes()


# ---------------------------------------------------------------------------
# model files


@pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.glob("*.alg")))
def test_save_model_round_trips(name):
    model = load_model(FIXTURES / name)
    assert parse_model(save_model(model)) == model


def test_save_model_writes_a_file(tmp_path):
    model = load_model(FIXTURES / "so3.alg")
    out = tmp_path / "copy.alg"
    save_model(model, out)
    assert load_model(out) == model


ALGEBROID_HEADER = '[algebroid]\nbase = [ "x1" ]\nrank = 2\n'

BAD_MODELS = [
    ("entry outside any section", "rank = 2\n", "outside of any section"),
    ("unterminated header", "[algebroid\nrank = 2\n", "unterminated"),
    ("duplicate algebroid section", ALGEBROID_HEADER + "[algebroid]\n", "duplicate"),
    ("unknown section header", "[spinor S]\n1 = \"1\"\n", "unknown section header"),
    ("missing equals sign", ALGEBROID_HEADER + "anchor[1][1]\n", "expected 'key = value'"),
    ("rank not an integer", '[algebroid]\nbase = [ "x1" ]\nrank = two\n', "rank must be an integer"),
    ("negative rank", '[algebroid]\nbase = [ "x1" ]\nrank = -1\n', "nonnegative"),
    ("unquoted entry", ALGEBROID_HEADER + "anchor[1][1] = x1\n", "expected a quoted string"),
    ("base not a list", '[algebroid]\nbase = "x1"\nrank = 1\n', "expected a"),
    ("unquoted base name", "[algebroid]\nbase = [ x1 ]\nrank = 1\n", "quoted coordinate names"),
    ("duplicate anchor key", ALGEBROID_HEADER + 'anchor[1][1] = "1"\nanchor[1][1] = "2"\n', "duplicate key"),
    ("anchor index out of range", ALGEBROID_HEADER + 'anchor[3][1] = "1"\n', "out of range"),
    ("diagonal structure key", ALGEBROID_HEADER + 'C[1][1][1] = "1"\n', "non-increasing or out-of-range"),
    ("reversed structure key", ALGEBROID_HEADER + 'C[1][2][1] = "1"\n', "non-increasing or out-of-range"),
    ("structure component out of range", ALGEBROID_HEADER + 'C[3][1][2] = "1"\n', "component index out of range"),
    ("undeclared coordinate", ALGEBROID_HEADER + 'anchor[1][1] = "y7"\n', "anchor"),
    ("unknown algebroid key", ALGEBROID_HEADER + "foo = 3\n", "unknown key"),
    ("reversed bivector key", '[poisson]\nbase = [ "x1", "x2" ]\nL[2][1] = "1"\n', "non-increasing or out-of-range"),
    ("unknown poisson key", '[poisson]\nbase = [ "x1" ]\nfoo = "1"\n', "unknown key"),
    ("duplicate element name", ALGEBROID_HEADER + "[form a]\n[form a]\n", "duplicate element name"),
    ("bad element index", ALGEBROID_HEADER + '[form a]\nx = "1"\n', "bad element index"),
    ("duplicate element index", ALGEBROID_HEADER + '[form a]\n1 = "1"\n1 = "2"\n', "duplicate index"),
    ("non-increasing element index", ALGEBROID_HEADER + '[form a]\n2,1 = "1"\n', "strictly increasing"),
    ("element index out of range", ALGEBROID_HEADER + '[form a]\n3 = "1"\n', "out of range"),
    ("element without a context", '[form a]\n1 = "1"\n', "element blocks need"),
    ("duplicate chart name", '[algebroid]\nbase = [ "x1", "x1" ]\nrank = 1\n', "base"),
]


@pytest.mark.parametrize("text,match", [(t, m) for _, t, m in BAD_MODELS], ids=[b[0] for b in BAD_MODELS])
def test_bad_model_raises(text, match):
    with pytest.raises(ModelError, match=match):
        parse_model(text)


# ---------------------------------------------------------------------------
# exit code 2: usage and model errors through main()


def write_model(tmp_path, text):
    path = tmp_path / "model.alg"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_model_error_exits_2(tmp_path, capsys):
    path = write_model(tmp_path, ALGEBROID_HEADER + 'C[1][1][1] = "1"\n')
    assert main(["check", "--model", path]) == 2
    err = capsys.readouterr().err
    assert err.startswith("algebroids: ")
    assert "non-increasing" in err


def test_missing_model_file_exits_2(capsys):
    assert main(["check", "--model", fixture("no_such_file.alg")]) == 2
    assert "cannot read model file" in capsys.readouterr().err


def test_missing_element_exits_2(capsys):
    assert main(["schouten", "--model", fixture("tangent_r3.alg"), "P", "nope"]) == 2
    assert "no element named 'nope'" in capsys.readouterr().err


def test_wrong_variance_operand_exits_2(capsys):
    # V is a multivector; d only accepts forms
    assert main(["d", "--model", fixture("tangent_r2.alg"), "V"]) == 2
    assert "expected a form" in capsys.readouterr().err


def test_command_needing_poisson_section_exits_2(capsys):
    assert main(["poisson-check", "--model", fixture("so3.alg")]) == 2
    assert "[poisson] section" in capsys.readouterr().err


def test_command_needing_algebroid_section_exits_2(capsys):
    assert main(["check", "--model", fixture("poisson_r2.alg")]) == 2
    assert "[algebroid] section" in capsys.readouterr().err


def test_unknown_command_exits_2(capsys):
    assert main(["frobnicate", "--model", fixture("so3.alg")]) == 2
    capsys.readouterr()


def test_missing_model_argument_exits_2(capsys):
    assert main(["check"]) == 2
    capsys.readouterr()


def test_missing_operand_exits_2(capsys):
    assert main(["schouten", "--model", fixture("tangent_r3.alg"), "P"]) == 2
    capsys.readouterr()
