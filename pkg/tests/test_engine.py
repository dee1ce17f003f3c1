import json
import subprocess

import pytest

from eulerorient import cli, oracle
from eulerorient.engine import (
    CRTUnstable, IntegerSeries, blob_hash, compute_exact, compute_series, residues_for, x_order,
)
from eulerorient.residues import read_residue_dump, select_primes


def test_crt_matches_exact_and_is_prime_set_independent():
    exact = compute_exact("general", 12)
    a = compute_series("general", 12, threads=1)
    b = compute_series("general", 12, prime_bound=min(a.primes), threads=1)
    assert not set(a.primes) & set(b.primes)
    assert a.coefficients == b.coefficients == exact.coefficients
    assert a.to_json() == b.to_json()


def test_parallel_run_is_identical():
    assert compute_series("fourvalent", 4, threads=2) == compute_series("fourvalent", 4, threads=1)


def test_too_few_primes_detected():
    with pytest.raises(CRTUnstable):
        compute_series("general", 20, n_primes=1, threads=1)


def test_fourvalent_first_terms():
    assert compute_series("fourvalent", 1, threads=1).coefficients == [1, 8]
    assert x_order("fourvalent", 30) == 61
    with pytest.raises(ValueError):
        x_order("cubic", 3)


def test_residues_reduce_exact_values():
    p = select_primes(1)[0]
    exact = compute_exact("general", 8).coefficients
    assert residues_for("general", 8, p) == [u % p for u in exact]


def test_series_json_round_trip(tmp_path):
    s = IntegerSeries("general", [1, 2, 10, 2**80])
    doc = json.loads(s.to_json())
    assert doc == {"model": "general", "n_max": 3, "coefficients": ["1", "2", "10", str(2**80)]}
    assert IntegerSeries.read(s.write(tmp_path / "s.json")) == s
    with pytest.raises(ValueError):
        IntegerSeries.from_json('{"model": "general", "n_max": 5, "coefficients": ["1"]}')


def test_blob_hash_matches_git(tmp_path):
    path = tmp_path / "blob.txt"
    path.write_text("1\n2\n10\n")
    git = subprocess.run(["git", "hash-object", str(path)], capture_output=True, text=True)
    if git.returncode != 0:
        pytest.skip("git unavailable")
    assert blob_hash(path) == git.stdout.strip()


# -- command line -------------------------------------------------------------

def test_cli_compute_writes_series_dumps_and_manifest(tmp_path, capsys):
    code = cli.main(["compute", "--model", "general", "--terms", "6", "--out", str(tmp_path), "--manifest"])
    assert code == cli.EXIT_OK
    series = IntegerSeries.read(tmp_path / "general.json")
    assert series.coefficients == [1, 2, 10, 66, 504, 4216, 37548]
    dumps = sorted((tmp_path / "residues").glob("general_*.txt"))
    assert dumps
    header, values = read_residue_dump(dumps[0])
    assert header["model"] == "general" and header["nmax"] == "6"
    assert values == [c % int(header["prime"]) for c in series.coefficients]
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["config"]["primes"]
    assert manifest["outputs"][str(tmp_path / "general.json")] == blob_hash(tmp_path / "general.json")


def test_cli_oracle_general(capsys):
    assert cli.main(["oracle", "--model", "general", "--oracle-max", "4"]) == cli.EXIT_OK
    rows = capsys.readouterr().out.strip().splitlines()
    assert rows[0] == "n\tengine\toracle"
    assert [r.split("\t") for r in rows[1:]] == [["1", "2", "2"], ["2", "10", "10"],
                                                   ["3", "66", "66"], ["4", "504", "504"]]


def test_cli_oracle_eulerian_maps():
    assert cli.main(["oracle", "--model", "eulerian", "--oracle-max", "4"]) == cli.EXIT_OK


def test_cli_oracle_mismatch(monkeypatch, capsys):
    monkeypatch.setattr(oracle, "oracle_U", lambda n: 0)
    assert cli.main(["oracle", "--model", "general", "--oracle-max", "2"]) == cli.EXIT_MISMATCH
    assert "MISMATCH" in capsys.readouterr().out


def test_cli_config_errors(tmp_path):
    assert cli.main(["compute", "--terms", "0", "--out", str(tmp_path)]) == cli.EXIT_CONFIG
    assert cli.main(["analyze", str(tmp_path / "missing.json")]) == cli.EXIT_CONFIG
    assert cli.main(["analyze", "--out", str(tmp_path)]) == cli.EXIT_CONFIG
    assert cli.main(["analyze", "--test-series", "--mu", "banana"]) == cli.EXIT_CONFIG
    with pytest.raises(SystemExit) as exc:
        cli.main(["compute", "--model", "cubic", "--terms", "3"])
    assert exc.value.code == cli.EXIT_CONFIG


def test_cli_numeric_failure(tmp_path):
    path = IntegerSeries("general", [1, 0] * 20).write(tmp_path / "zeros.json")
    code = cli.main(["analyze", str(path), "--out", str(tmp_path / "a"), "--orders", "2"])
    assert code == cli.EXIT_NUMERIC
