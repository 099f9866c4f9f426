import shutil
import subprocess
import sys

import pytest

from tcw.cli import run_command
from tcw.report import parse_structured_block


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_minmod_example(capsys):
    code, out, _ = run(capsys, "minmod", "--theory", "catalog/T_geq_3", "--sorts", "s1", "--formula", "x:s1 != y:s1")
    assert code == 0
    assert out.strip() == "{(3)}"


def test_sat_example(capsys):
    code, out, _ = run(capsys, "sat", "--theory", "catalog/T_inf", "--formula", "x:s1 != x:s1")
    assert code == 1
    assert out.strip() == "UNSAT"


@pytest.mark.parametrize("method", ["generic", "oracle"])
def test_sat_methods(capsys, method):
    code, out, _ = run(capsys, "sat", "--theory", "T_even_inf", "--formula", "x:s1 != y:s1", "--method", method)
    assert (code, out.strip()) == (0, "SAT")


@pytest.mark.parametrize("method", ["generic", "transfer", "oracle"])
def test_minmod_methods_agree(capsys, method):
    code, out, _ = run(
        capsys, "minmod", "--theory", "add_sort_T_geq_2", "--formula", "x:s1 != y:s1 & a:s2 != b:s2", "--method", method
    )
    assert (code, out.strip()) == (0, "{(2,2)}")


def test_json_like_block(capsys):
    code, out, _ = run(capsys, "minmod", "--theory", "T_mn_inf_3_1", "--formula", "a:s2 != b:s2", "--json-like")
    data = parse_structured_block(out)
    assert data["minmod"] == [[1, "Inf"], [3, 2]]
    assert data["exit_code"] == code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["sat", "--theory", "T_inf", "--formula", "x:s1 = "],
        ["sat", "--theory", "T_nope", "--formula", "x:s1 = x:s1"],
        ["sat", "--formula", "x:s1 = x:s1"],
        ["minmod", "--theory", "T_inf", "--sorts", "s7", "--formula", "x:s1 = x:s1"],
        ["check", "--theory", "T_inf", "--property", "ZZ"],
        ["operator", "--kind", "add_magic", "--theory", "T_inf"],
        ["frobnicate"],
        [],
    ],
)
def test_input_errors_exit_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3
    assert err


def test_witness_exit_codes(capsys):
    code, out, _ = run(capsys, "witness", "--theory", "T_I", "--formula", "x:s1 != y:s1", "--validate")
    assert code == 0 and "plain validation" in out
    code, out, _ = run(capsys, "witness", "--theory", "T_I", "--formula", "x:s1 != y:s1", "--strong")
    assert code == 1 and "(5)" in out
    code, out, _ = run(capsys, "witness", "--theory", "T_inf", "--formula", "x:s1 = x:s1")
    assert code == 1 and out.startswith("no witness")


def test_check_exit_codes(capsys):
    assert run(capsys, "check", "--theory", "T_geq_3", "--property", "SI")[0] == 0
    assert run(capsys, "check", "--theory", "T_leq_3", "--property", "si")[0] == 1
    assert run(capsys, "check", "--theory", "T_bb", "--property", "CF")[0] == 2


def test_oracle_exhaustion_exit_4(capsys):
    # five distinct elements need bb(3), which is not in the known prefix
    f = " & ".join(f"{a}:s1 != {b}:s1" for i, a in enumerate("vwxyz") for b in "vwxyz"[i + 1 :])
    code, _, err = run(capsys, "witness", "--theory", "T_bb", "--formula", f)
    assert code == 4 and "bb" in err


def test_operator(capsys):
    code, out, _ = run(capsys, "operator", "--kind", "add_fn_or", "--theory", "T_geq_2", "--formula", "s(x:s1) != x:s1")
    assert code == 0
    assert "cycle_or(1)" in out and "agree" in out


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "--unary", "--formula", "s(s(x:s1)) = y:s1")
    assert code == 0
    assert out.splitlines()[0] == "s^2(x:s1) = y:s1"
    assert "flattened" in out


def test_profile_with_figure(capsys, tmp_path):
    fig = tmp_path / "p.png"
    code, out, _ = run(capsys, "profile", "--theory", "T_inf", "--figure", str(fig))
    assert code == 0
    assert "SI+ SM+ CV+ FM- SF- FW- SW- CF+" in out
    assert fig.stat().st_size > 1000


def test_verify_catalog_subset(capsys, tmp_path):
    fig = tmp_path / "c.png"
    code, out, _ = run(
        capsys, "verify-catalog", "--bound", "4", "--theories", "T_geq_3,T_inf", "--figure", str(fig), "--json-like"
    )
    assert code == 0
    data = parse_structured_block(out)
    assert [p["theory"] for p in data["profiles"]] == ["T_geq_3", "T_inf"]
    assert data["failing"] == []
    assert fig.exists()


def test_output_is_deterministic(capsys):
    argv = ["profile", "--theory", "T_even_inf", "--json-like"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


@pytest.mark.skipif(shutil.which("tcw") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(
        ["tcw", "sat", "--theory", "catalog/T_inf", "--formula", "x:s1 != x:s1"], capture_output=True, text=True
    )
    assert r.returncode == 1 and r.stdout.strip() == "UNSAT"


def test_module_entry():
    r = subprocess.run(
        [sys.executable, "-m", "tcw.cli", "minmod", "--theory", "T_geq_3", "--formula", "x:s1 != y:s1"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0 and r.stdout.strip() == "{(3)}"
