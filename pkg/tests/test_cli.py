import json
import subprocess
import sys

import pytest

from modcollatz import cli
from modcollatz.detvalue import DetValue
from reference_tables import CENSUS_PI2_175, REPUNIT_EXP2, REPUNIT_N


def run(capsys, *argv):
    code = cli.main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_det_examples(capsys):
    code, out, _ = run(capsys, "det", "collatz", "13", "--method", "both")
    assert code == 0 and out.split() == ["-2^5", "agree"]
    assert run(capsys, "det", "conway", "7")[1].strip() == "-3*2^2"
    assert run(capsys, "det", "collatz", "4")[1].strip() == "0"
    assert run(capsys, "det", "pnq", "9", "-p", "7", "--method", "both")[1].split() == ["2^1", "agree"]
    assert run(capsys, "det", "collatz", "13", "--decimal")[1].split() == ["-2^5", "-32"]


def test_det_repunit_with_hint(capsys):
    code, out, _ = run(capsys, "det", "collatz", str(REPUNIT_N), "--order-exponent-hint", "71")
    assert code == 0 and out.strip() == f"-2^{REPUNIT_EXP2}"


def test_det_json(capsys):
    _, out, _ = run(capsys, "--json", "det", "conway", "217")
    d = json.loads(out)
    assert d["det"] == "3*2^20" and d["exp2"] == 20 and d["factor3"] and d["value"] == str(3 << 20)
    # global flags also work after the command
    _, out2, _ = run(capsys, "det", "conway", "217", "--json")
    assert json.loads(out2)["det"] == "3*2^20"


def test_det_mismatch_exits_2(capsys, monkeypatch):
    monkeypatch.setattr(cli, "det_collatz_formula", lambda N, hint=None: DetValue(1, 99))
    code, out, _ = run(capsys, "det", "collatz", "13", "--method", "both")
    assert code == 2 and "MISMATCH" in out


def test_usage_errors_exit_1(capsys):
    assert run(capsys, "det", "collatz", "1300", "--method", "oracle")[0] == 1
    assert run(capsys, "det", "collatz", "1300", "--method", "oracle", "--oracle-bound", "1300")[0] == 0
    assert run(capsys, "det", "pnq", "15", "-p", "5")[0] == 1
    assert run(capsys, "cycles", "9", "--perm", "pi0")[0] == 1
    assert run(capsys, "scan", "--from", "20", "--to", "10")[0] == 1
    assert run(capsys, "verify", "--suites", "nope")[0] == 1
    assert run(capsys, "--jobs", "0", "scan", "--to", "9")[0] == 1
    assert run(capsys, "det", "collatz", "0")[0] == 1
    with pytest.raises(SystemExit) as e:
        cli.main(["det", "collatz", "x"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        cli.main([])
    assert e.value.code == 1


def test_charpoly_examples(capsys):
    assert run(capsys, "charpoly", "collatz", "3")[1].strip() == "x^3 - 2*x^2 - x + 2"
    assert run(capsys, "charpoly", "collatz", "65", "--eval", "-1")[1].strip() == "0"
    code, out, _ = run(capsys, "charpoly", "collatz", "9", "--check-divisor", "3")
    assert code == 0 and out.strip() == "P_3 divides P_9"
    assert run(capsys, "charpoly", "collatz", "9", "--check-divisor", "4")[0] == 1
    _, out, _ = run(capsys, "--json", "charpoly", "conway-x", "7")
    assert json.loads(out)["charpoly"].startswith("x^7")


def test_edges_example(capsys):
    code, out, _ = run(capsys, "edges", "7")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "loops: 0 6"
    assert lines[1] == "strongly double: (3,5)"
    assert lines[2] == "weakly double: (1,2)"
    assert lines[-1] == "matches closed forms"
    _, out, _ = run(capsys, "edges", "3", "--dump")
    assert out.splitlines()[0].count("\t") == 2


def test_cycles_examples(capsys):
    _, out, _ = run(capsys, "--json", "cycles", "175", "--perm", "pi2")
    d = json.loads(out)
    assert tuple((r["divisor"], r["cycle_length"], r["count"]) for r in d["census"]) == CENSUS_PI2_175
    assert len(d["cycles"]) == 9
    code, out, _ = run(capsys, "cycles", "13", "--perm", "pi0", "--no-list")
    assert code == 0 and "total cycles: 5" in out


def test_scan_prime_table(capsys):
    code, out, err = run(capsys, "scan", "--from", "3", "--to", "1000", "--primes-only", "--nonzero-only",
                         "--records")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "N,is_prime,sign,exp2,factor3"
    assert len(lines) == 58
    assert "13,1,-1,5,0" in lines and "313,1,1,9,0" in lines
    assert "# record prime -: N=757 det=-2^85" in err


def test_scan_51157_and_out_file(capsys, tmp_path):
    path = tmp_path / "rows.csv"
    code, out, _ = run(capsys, "--out", str(path), "scan", "--from", "51157", "--to", "51157", "--records")
    assert code == 0
    assert path.read_text().splitlines()[1] == "51157,1,-1,1045,0"
    assert "# record prime -: N=51157 det=-2^1045" in out


def test_scan_json_and_jobs(capsys):
    _, one, _ = run(capsys, "scan", "--kind", "conway", "--to", "3001")
    _, two, _ = run(capsys, "--jobs", "2", "scan", "--kind", "conway", "--to", "3001")
    assert one == two
    _, out, _ = run(capsys, "--json", "scan", "--kind", "conway", "--from", "7", "--to", "7")
    assert json.loads(out)["det"] == "-3*2^2"


def test_plotdata(capsys):
    _, out, _ = run(capsys, "plotdata", "--to", "1000")
    lines = out.splitlines()
    assert lines[0] == "N,primality,signed_log2"
    assert "13,prime,-5" in lines and "757,prime,-85" in lines and "15,composite," in lines
    assert run(capsys, "plotdata", "--to", "2")[0] == 1


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--max", "350", "--suites", "collatz-det")
    assert code == 0 and out.startswith("PASS collatz-det: 349 checked, 0 mismatches")
    code, out, _ = run(capsys, "verify", "--suites", "zolotarev,perm-pair")
    assert code == 0 and out.count("PASS") == 2
    code, out, _ = run(capsys, "--json", "verify", "--max", "60", "--suites", "connectivity")
    assert code == 2 and json.loads(out)[0]["ok"] is False


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "modcollatz", "det", "collatz", "757"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "-2^85"
