import json
import subprocess
import sys

import pytest

from orthoforms import cli
from orthoforms.fixtures import dumps, loads, read_fixture
from orthoforms.report import VerifyReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_psi_rank17(capsys):
    code, out, _ = run(capsys, "expand", "psi.rank17", "--q-prec", "2")
    assert code == 0
    assert out.startswith("(2)*q^-1 + (2*zeta1^2 - 2*zeta1 + 120 - 2*zeta1^(-1) + 2*zeta1^(-2))")


def test_expand_level_two_reference(capsys):
    code, out, _ = run(capsys, "expand", "E2.level2.reference", "--q-prec", "4")
    assert code == 0
    assert "24*q" in out and "96*q^3" in out


def test_expand_table_entry_prints_the_polynomial(capsys):
    code, out, _ = run(capsys, "expand", "table.rank18.b12", "--q-prec", "2", "--s-prec", "2")
    assert code == 0
    assert out.splitlines()[0].startswith("b12 = ")


def test_unknown_name_lists_the_catalogue(capsys):
    code, _, err = run(capsys, "expand", "chi99.L9")
    assert code == 2
    assert "psi.n=N" in err


@pytest.mark.parametrize("argv", [
    ["verify", "rank16", "--deep"],
    ["verify", "--rank", "12"],
    ["expand", "E4", "--q-prec", "0"],
    ["verify", "all", "--threads", "0"],
    ["expand", "f3.n=2"],
    ["expand", "chi2.L1"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_verify_passes_with_exit_0(capsys):
    code, out, _ = run(capsys, "verify", "symbolic")
    assert code == 0
    assert "PASS" in out


def test_verify_failure_exits_1(capsys, monkeypatch):
    def failing(*_args, **_kw):
        rep = VerifyReport("rank16")
        rep.add("b8 identity", False, discrepancy="q^1 s^1 differs")
        return rep
    monkeypatch.setattr(cli, "run_suite", failing)
    code, out, _ = run(capsys, "verify", "rank16")
    assert code == 1
    assert "FAIL" in out


def test_json_round_trip_is_byte_identical(capsys, tmp_path):
    code, out, _ = run(capsys, "expand", "chi10.L1", "--q-prec", "3", "--s-prec", "3", "--json",
                       "--fixtures", str(tmp_path))
    assert code == 0
    text = out.rstrip("\n")
    assert dumps(loads(text)) == text
    assert dumps(read_fixture(tmp_path, "chi10.L1")) == text


def test_verify_json_output(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "level2", "--json", "--fixtures", str(tmp_path))
    assert code == 0
    data = json.loads(out)
    assert data[0]["passed"]
    rep = read_fixture(tmp_path, "report." + data[0]["suite"].replace(" ", "_"))
    assert rep.passed


def test_bench_json(capsys):
    code, out, _ = run(capsys, "bench", "--q-prec", "3", "--s-prec", "2", "--json")
    assert code == 0
    rows = json.loads(out)
    assert rows and all("seconds" in r for r in rows)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "orthoforms", "expand", "Delta", "--q-prec", "3"],
                         capture_output=True, text=True, timeout=120)
    assert res.returncode == 0
    assert res.stdout.strip() == "q - 24*q^2 + O(q^3)"
