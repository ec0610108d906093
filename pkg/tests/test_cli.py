import json
import subprocess
import sys

import pytest

from pisanokit.cli import EXIT_FAIL, EXIT_OK, EXIT_SCOPE, EXIT_USAGE, main

from oracles import fib_pairs_period, roots_of_E


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def usage(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    capsys.readouterr()
    return exc.value.code


def test_period_text(capsys):
    code, out, _ = run(capsys, "period", "11")
    assert code == EXIT_OK
    assert out.startswith(f"π(11) = {fib_pairs_period(11)}")
    assert "case OddDouble, ord(r)=10, ord(s)=5" in out


def test_period_json_fallback(capsys):
    code, out, _ = run(capsys, "period", "10", "--json")
    assert code == EXIT_SCOPE
    rec = json.loads(out)
    assert rec["period"] == fib_pairs_period(10)
    assert rec["method"] == "BruteForce"
    five = [c for c in rec["components"] if c["prime"] == 5]
    assert five and five[0]["case"] == "Fallback"


@pytest.mark.parametrize("argv", [["period", "1"], ["period", "x"], ["period", "-4"],
                                  ["verify", "--max", "1"], ["fib", "-1", "--mod", "7"],
                                  ["fib", "3"], ["bogus"], []])
def test_usage_errors(capsys, argv):
    assert usage(capsys, *argv) == EXIT_USAGE


def test_period_methods(capsys):
    for method in ("roots", "matrix", "brute"):
        code, out, _ = run(capsys, "period", "144", "--method", method, "--json")
        assert code == EXIT_OK
        assert json.loads(out)["period"] == fib_pairs_period(144)
    code, _, _ = run(capsys, "period", "15", "--method", "roots")
    assert code == EXIT_SCOPE


def test_period_cap(capsys):
    code, _, err = run(capsys, "period", "11", "--method", "brute", "--cap", "5")
    assert code == EXIT_FAIL and "within 5 steps" in err


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "11")
    assert code == EXIT_OK
    assert roots_of_E(11) == [4, 8]
    assert "r = 8" in out and "s = 4" in out and "sqrt5 = r - s = 4" in out

    code, out, _ = run(capsys, "roots", "7")
    assert code == EXIT_OK and roots_of_E(7) == []
    assert "extension" in out and "r = 0 + 1*w" in out and "s = 1 + 6*w" in out

    code, out, _ = run(capsys, "roots", "25")
    assert code == EXIT_SCOPE and "hypothesis violated" in out


def test_roots_json(capsys):
    code, out, _ = run(capsys, "--json", "roots", "33")
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["n"] for r in recs] == [3, 11]
    assert recs[1]["r"] == 8 and recs[0]["r"] == [0, 1]
    assert all(v == "pass" for r in recs for v in r["checks"].values())


def test_fib(capsys):
    code, out, _ = run(capsys, "fib", "10", "--mod", "11", "--method", "all")
    assert code == EXIT_OK
    assert "iterative: 0" in out and "matrix: 0" in out and "binet: 0" in out
    code, out, _ = run(capsys, "fib", "0", "--mod", "7")
    assert out.strip() == "F(0) mod 7 = 0"
    code, _, err = run(capsys, "fib", "10", "--mod", "10", "--method", "binet")
    assert code == EXIT_SCOPE and "hypothesis" in err


def test_fib_all_skips_iterative_for_huge_k(capsys):
    code, out, _ = run(capsys, "--json", "fib", str(10**18), "--mod", "1000003", "--method", "all")
    rec = json.loads(out)
    assert code == EXIT_OK and rec["values"]["iterative"] is None and rec["agree"]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--max", "2")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[0] == "n=2 period=3 brute=3 cases=CharTwo ok"
    assert lines[-1] == "1 moduli checked, 0 mismatches"

    code, out, _ = run(capsys, "verify", "--max", "100")
    assert code == EXIT_OK and out.splitlines()[-1] == "99 moduli checked, 0 mismatches"


def test_verify_reports_mismatch(capsys, monkeypatch):
    import pisanokit.pisano as pis

    monkeypatch.setattr(pis, "pisano_brute", lambda n, cap=None: fib_pairs_period(n) + (n == 7))
    code, out, _ = run(capsys, "verify", "--max", "8")
    assert code == EXIT_FAIL
    assert "MISMATCH" in out and out.splitlines()[-1].endswith(": 7")


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--primes-up-to", "12")
    rows = out.splitlines()[:-1]
    assert code == EXIT_OK
    assert [r.split()[:2] for r in rows] == [
        ["p=2", "case=CharTwo"], ["p=3", "case=ExtensionOnly"],
        ["p=7", "case=ExtensionOnly"], ["p=11", "case=OddDouble"],
    ]
    code, out, _ = run(capsys, "classify", "--primes-up-to", "41", "--json")
    last = json.loads(out.splitlines()[-1])
    assert last == {"prime": 41, "case": "BothEven", "ord_r": 40, "ord_s": 40, "period": 40}
    code, out, _ = run(capsys, "classify", "--primes-up-to", "2")
    assert out.splitlines()[0] == "p=2 case=CharTwo ord(r)=3 ord(s)=3 period=3"


@pytest.mark.parametrize("argv", [["period", "720"], ["period", "10"], ["classify", "--primes-up-to", "30"],
                                  ["fib", "12345", "--mod", "1001", "--method", "all"]])
def test_json_round_trip(capsys, argv):
    _, out, _ = run(capsys, "--json", *argv)
    for line in out.splitlines():
        assert json.dumps(json.loads(line), ensure_ascii=False) == line


def test_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "period", "720")
    _, js, _ = run(capsys, "period", "720", "--json")
    rec = json.loads(js)
    assert f"π(720) = {rec['period']}" in text
    for c in rec["components"]:
        assert f"{c['prime']}^{c['exponent']}: local period {c['local_period']}, case {c['case']}" in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pisanokit", "period", "29"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "π(29) = 14" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "pisanokit", "period", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == EXIT_USAGE
