import json
import subprocess
import sys

from critpair.cli import main
from critpair.report import VerificationReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_profile(capsys):
    code, out, _ = run(capsys, "profile", "Z6", "{0,1,3}", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["k1"]["kappa"] == 2 and data["k2"]["kappa"] == 2
    assert data["hyper_atoms"] == ["{0,3}"]
    code, out, _ = run(capsys, "profile", "Z5", "{0,1}")
    assert code == 0 and "kappa_1 = 1" in out


def test_profile_exit_codes(capsys):
    assert run(capsys, "profile", "Z6", "{1,3}")[0] == 3
    assert run(capsys, "profile", "Z6", "{0,2}")[0] == 3
    assert run(capsys, "profile", "Z6", "{0,9}")[0] == 2
    assert run(capsys, "profile", "Y6", "{0}")[0] == 2
    assert run(capsys, "profile", "Z6")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "Z12", "{0,1,6}", "{0,6,7}", "--json")
    data = json.loads(out)
    assert code == 0 and data["case"] == "iii" and data["H"] == "{0,6}"
    assert all(data["checks"].values())
    code, out, _ = run(capsys, "classify", "Z2xZ8", "{(0,0),(1,0),(0,4)}",
                       "{(0,0),(1,0),(0,4),(1,4),(0,1)}")
    assert code == 0 and out.startswith("case i ")
    code, out, _ = run(capsys, "classify", "Z12", "{0,1,2}", "{0,1,2,5}")
    assert code == 3 and "S_not_arithmetic_progression" in out


def test_sweep_writes_reports(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", "--theorem", "kneser", "--orders", "2..6",
                       "--output", str(tmp_path))
    assert code == 0 and "OK" in out
    report = VerificationReport.from_json((tmp_path / "kneser.json").read_text())
    assert report.ok and report.consistent() and report.groups[0] == "Z2"
    csv_lines = (tmp_path / "kneser.csv").read_text().splitlines()
    assert len(csv_lines) == 1 + len(report.groups)


def test_sweep_exit_codes(capsys):
    assert run(capsys, "sweep", "--orders", "2..40")[0] == 2
    assert run(capsys, "sweep", "--theorem", "nope", "--group", "Z6")[0] == 2
    assert run(capsys, "sweep", "--theorem", "kneser")[0] == 2
    assert run(capsys, "sweep", "--orders", "2..x")[0] == 2
    assert run(capsys, "sweep", "--theorem", "apc", "--group", "Z5")[0] == 1


def test_sweep_worker_determinism(capsys):
    _, one, _ = run(capsys, "sweep", "--theorem", "n_minus_2", "--group", "Z12", "--json")
    _, four, _ = run(capsys, "sweep", "--theorem", "n_minus_2", "--group", "Z12",
                     "--workers", "4", "--json")
    a, b = VerificationReport.from_json(one), VerificationReport.from_json(four)
    assert a.to_json(timing=False) == b.to_json(timing=False)


def test_sweep_cache_coherence(capsys, tmp_path):
    argv = ["sweep", "--theorem", "cay", "--group", "Z8", "--json", "--cache", str(tmp_path)]
    _, fresh, _ = run(capsys, *argv)
    _, hit, _ = run(capsys, *argv)
    code, verified, _ = run(capsys, *argv, "--verify-cache")
    _, plain, _ = run(capsys, *argv[:-2])
    assert code == 0
    strip = [VerificationReport.from_json(x).to_json(timing=False) for x in (fresh, hit, verified, plain)]
    assert len(set(strip)) == 1


def test_verify_cache_detects_tampering(capsys, tmp_path):
    argv = ["profile", "Z6", "{0,1,3}", "--json", "--cache", str(tmp_path)]
    run(capsys, *argv)
    (entry,) = [p for p in tmp_path.glob("*.json")]
    body = json.loads(entry.read_text())
    body["value"]["k1"]["kappa"] = 99
    entry.write_text(json.dumps(body))
    assert json.loads(run(capsys, *argv)[1])["k1"]["kappa"] == 99
    code, _, err = run(capsys, *argv, "--verify-cache")
    assert code == 1 and "CacheMismatch" in err


def test_graph_sipg(capsys, tmp_path):
    code, out, _ = run(capsys, "graph-sipg", "--cayley", "Z6", "{0,1,3}", "--X", "{0,3}", "--json")
    data = json.loads(out)
    assert code == 0 and data["kappa_1"] == 2 and data["pairs"] == [[0, 1], [3, 4]]
    code, out, _ = run(capsys, "graph-sipg", "--cayley", "Z6", "{0,1,3}", "--X", "{0}", "--x", "0")
    assert code == 0 and "0 -> 1" in out and "0 -> 3" in out
    path = tmp_path / "g.txt"
    path.write_text("4\n0 1\n1 2\n2 3\n3 0\n")
    code, out, _ = run(capsys, "graph-sipg", "--graph", str(path), "--X", "{0}")
    assert code == 0 and "0 -> 1" in out
    assert run(capsys, "graph-sipg", "--X", "{0}")[0] == 2
    assert run(capsys, "graph-sipg", "--graph", str(tmp_path / "missing"), "--X", "{0}")[0] == 2
    assert run(capsys, "graph-sipg", "--cayley", "Z6", "{0,1,3}", "--X", "0,3")[0] == 2


def test_lemma_check(capsys):
    code, out, _ = run(capsys, "lemma-check", "tpowers", "Z12", "S={0,1,6}", "T={0,6,7}")
    assert code == 0 and out.startswith("tpowers: holds")
    code, out, _ = run(capsys, "lemma-check", "APC", "Z5", "P={0,1,2}", "X={0,2,4}", "--json")
    assert code == 1 and json.loads(out)["holds"] is False
    code, out, _ = run(capsys, "lemma-check", "lee", "Z6", "X={0}", "S={0,2}")
    assert code == 0 and "vacuous" in out
    assert run(capsys, "lemma-check", "nope", "Z6", "S={0}")[0] == 2
    assert run(capsys, "lemma-check", "lee", "Z6", "S")[0] == 2


def test_order_cap_flag(capsys, monkeypatch):
    assert run(capsys, "profile", "Z30", "{0,1}")[0] == 2
    assert run(capsys, "profile", "Z8", "{0,1}", "--order-cap", "6")[0] == 2
    monkeypatch.setenv("CPW_ORDER_CAP", "4")
    assert run(capsys, "profile", "Z5", "{0,1}")[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "critpair", "profile", "Z6", "{0,1,3}"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "kappa_1 = 2" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "critpair", "profile", "Z6", "{1,3}"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 3 and "ZeroNotInS" in proc.stderr
