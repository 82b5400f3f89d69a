import io
import json
import subprocess
import sys

import pytest

from cyclic_ehrhart.cli import EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, run, sample_instances
from cyclic_ehrhart import cli


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


GOLDEN = {
    ("ehrhart", "--t", "1,2,3,4", "--dim", "3"): "2*m^3 + 4*m^2 + 3*m + 1\n",
    ("volume", "--t", "1,2,3,4", "--dim", "2"): "4\n",
    ("count", "--t", "-3,1,2,6", "--dim", "2", "--m", "2", "--method", "signed-boxes"): "419\n",
    ("count", "--t", "1,2,3,4", "--dim", "3", "--m", "1", "--method", "bruteforce"): "10\n",
    ("facets", "--t", "1,2,3,4", "--dim", "3"): (
        "{1,2,3}  -  11*x1 - 6*x2 + x3 >= 6\n"
        "{1,2,4}  +  -14*x1 + 7*x2 - x3 >= -8\n"
        "{1,3,4}  -  19*x1 - 8*x2 + x3 >= 12\n"
        "{2,3,4}  +  -26*x1 + 9*x2 - x3 >= -24\n"
    ),
}


@pytest.mark.parametrize("argv", list(GOLDEN))
def test_golden_text(argv):
    assert call(*argv) == (EXIT_OK, GOLDEN[argv])


def test_decompose_text():
    code, text = call("decompose", "--t", "1,2,3,4", "--dim", "3")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[1] == "  sigma=(1,2,3)  sign=+  box=(3,2,1)  count=34"
    assert lines[-2:] == ["  signed total = 2", "total = 2"]


@pytest.mark.parametrize("method", cli.METHODS)
def test_count_methods_agree(method):
    assert call("count", "--t", "-2,0,3,4,5", "--dim", "3", "--m", "2", "--method", method) == (EXIT_OK, "3579\n")


def test_json_is_stable_and_exact():
    argv = ("ehrhart", "--t", "1,2,3,4", "--dim", "3", "--format", "json")
    code, a = call(*argv)
    _, b = call(*argv)
    assert code == EXIT_OK and a == b
    data = json.loads(a)
    assert data["polynomial"]["coefficients"] == ["1", "3", "4", "2"]
    assert data["dim"] == "3" and data["T"] == ["1", "2", "3", "4"]
    assert json.dumps(data, sort_keys=True, indent=2) + "\n" == a


def test_json_fraction_volume():
    _, text = call("volume", "--t", "0,1,3", "--dim", "2", "--format", "json")
    assert json.loads(text)["volume"] == "3"
    _, text = call("ehrhart", "--t", "0,1,2,3,5", "--dim", "4", "--format", "json")
    coeffs = json.loads(text)["polynomial"]["coefficients"]
    assert all(isinstance(c, str) for c in coeffs)


def test_out_file(tmp_path):
    target = tmp_path / "facets.json"
    code, text = call("facets", "--t", "1,2,3,4,5,6", "--dim", "4", "--format", "json", "--out", str(target))
    assert code == EXIT_OK
    assert target.read_text(encoding="utf-8") == text
    assert len(json.loads(text)["facets"]) == 9


@pytest.mark.parametrize(
    "argv",
    [
        ("ehrhart", "--t", "3,2,1", "--dim", "2"),
        ("ehrhart", "--t", "1,1,2", "--dim", "1"),
        ("ehrhart", "--t", "1,2", "--dim", "3"),
        ("ehrhart", "--t", "a,b", "--dim", "1"),
        ("count", "--t", "1,2,3", "--dim", "2", "--m", "-1", "--method", "bruteforce"),
        ("verify", "--range", "3:1"),
        ("nonsense",),
    ],
)
def test_usage_errors(argv, capsys):
    assert call(*argv)[0] == EXIT_USAGE


def test_budget_exit(monkeypatch):
    monkeypatch.setenv("CYCLIC_EHRHART_BUDGET", "5")
    assert call("count", "--t", "0,4,9,15", "--dim", "3", "--m", "2", "--method", "bruteforce")[0] == EXIT_BUDGET
    code, text = call("verify", "--trials", "3", "--seed", "2")
    assert code == EXIT_BUDGET and text.startswith("BUDGET")


def test_negative_values_parse():
    assert call("volume", "--t", "-5,-1", "--dim", "1") == (EXIT_OK, "4\n")
    assert call("verify", "--trials", "3", "--range", "-4:4", "--dmax", "2")[0] == EXIT_OK


def test_verify_mismatch_reports_reproducer(monkeypatch):
    real = cli.count_points

    def broken(T, d, m, method, budget=None):
        value = real(T, d, m, method, budget)
        return value + 1 if method == "fibers" else value

    monkeypatch.setattr(cli, "count_points", broken)
    code, text = call("verify", "--trials", "4", "--seed", "9")
    assert code == EXIT_MISMATCH
    repro = [l for l in text.splitlines() if l.startswith("reproduce:")]
    assert len(repro) == 1 and repro[0].endswith("--method fibers")


def test_sample_instances_deterministic():
    a = sample_instances(4, 40, 123, -5, 10, 3)
    assert a == sample_instances(4, 40, 123, -5, 10, 3)
    assert a != sample_instances(4, 40, 124, -5, 10, 3)
    for ts, d, m in a:
        assert len(set(ts)) == len(ts) >= d + 1 and list(ts) == sorted(ts)
        assert -5 <= ts[0] and ts[-1] <= 10 and 1 <= m <= 3


def test_verify_jobs_reproducible():
    base = ("verify", "--trials", "12", "--seed", "4", "--dmax", "3", "--format", "json")
    one = call(*base, "--jobs", "1")
    two = call(*base, "--jobs", "2")
    assert one == two and one[0] == EXIT_OK


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cyclic_ehrhart", "ehrhart", "--t", "1,2,3,4", "--dim", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "2*m^3 + 4*m^2 + 3*m + 1\n"
