import csv
import io
import json
import subprocess
import sys

from sphc import chevmat as cm
from sphc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_table5(capsys):
    code, out, _ = run(capsys, "verify", "--table", "5")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 12
    assert all(r["passed"] for r in rows)


def test_verify_row_family(capsys):
    code, out, _ = run(capsys, "verify", "--row", "C:X:2", "--max-rank", "8")
    rows = json.loads(out)
    assert code == 0
    assert {r["type"] for r in rows} == {f"C{n}" for n in range(2, 9)}


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--table", "2", "--max-rank", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows and all(r["passed"] == "True" for r in rows)


def test_verify_usage_errors(capsys):
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "verify", "--row", "C:X")[0] == 2
    assert run(capsys, "verify", "--table", "99")[0] == 2


def test_tables(capsys):
    code, out, _ = run(capsys, "tables", "--series", "C", "--rank", "3", "--char", "2",
                       "--format", "json")
    d = json.loads(out)
    assert code == 0 and len(d["classes"]) == 4 and "not spherical" in d["note"]
    code, out, _ = run(capsys, "tables", "--series", "G", "--rank", "2", "--char", "3",
                       "--format", "json")
    assert [c["class"] for c in json.loads(out)["classes"]] == ["A1", "~A1", "~A1(3)"]
    code, out, _ = run(capsys, "tables", "--series", "A", "--rank", "3", "--format", "json")
    assert [c["class"] for c in json.loads(out)["classes"]] == ["X_1", "X_2"]
    code, out, _ = run(capsys, "tables", "--series", "C", "--rank", "3")
    assert code == 0 and "s(2e1)" in out
    assert run(capsys, "tables", "--series", "Q", "--rank", "3")[0] == 2
    assert run(capsys, "tables", "--series", "C", "--rank", "3", "--char", "3")[0] == 2


def test_census_gl3(capsys):
    code, out, _ = run(capsys, "census", "--group", "gl", "--n", "3", "--q", "2")
    d = json.loads(out)
    assert code == 0 and d["steinberg_ok"]
    assert sorted(c["label"] for c in d["classes"]) == ["1^3", "2+1", "3"]


def test_census_outer(capsys):
    code, out, _ = run(capsys, "census", "--group", "so", "--n", "3", "--q", "2", "--outer")
    (d,) = json.loads(out)
    assert code == 0 and set(d["buckets"]) == {"2+1^4", "2^3"}


def test_census_guard_exit_code(capsys):
    code, out, err = run(capsys, "census", "--group", "gl", "--n", "4", "--q", "2",
                         "--memory-limit", "200000")
    assert code == 3 and "omitted" in err
    assert json.loads(out)["omitted"]["2"]
    code, _, _ = run(capsys, "census", "--group", "so", "--n", "4", "--q", "2", "--outer")
    assert code == 3


def test_census_usage(capsys):
    assert run(capsys, "census", "--group", "sp", "--n", "2", "--q", "3")[0] == 2
    assert run(capsys, "census", "--group", "sp", "--n", "2", "--q", "2",
               "--class", "2+q")[0] == 2
    assert run(capsys, "census", "--group", "sp", "--n", "2", "--outer")[0] == 2


def test_census_single_class(capsys):
    code, out, _ = run(capsys, "census", "--group", "sp", "--n", "2", "--q", "2,4",
                       "--class", "2^2_1", "--b-orbits", "--cells")
    d = json.loads(out)
    (c,) = d["classes"]
    assert code == 0
    assert c["spherical_verdict"] == "spherical" and c["estimated_dim"] == 6
    assert next(iter(c["cells"]["4"])) == "s(2e1) s(2e2)"


def test_bruhat(capsys):
    sp = cm.group_spec("Sp", 2, 2)
    code, out, _ = run(capsys, "bruhat", cm.serialize(cm.identity(sp)).replace("\n", ";"))
    assert code == 0 and out.strip() == "e"
    code, out, _ = run(capsys, "bruhat", cm.serialize(cm.n_alpha(sp, (2, 0))))
    assert out.strip() == "s(2e1)"
    code, _, err = run(capsys, "bruhat", "Sp:4:1:0x3;zz")
    assert code == 2 and "hex" in err


def test_config_env(tmp_path, monkeypatch, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("poly.3 = 0x9\n")
    monkeypatch.setenv("SPHC_CONFIG", str(bad))
    assert run(capsys, "verify", "--table", "8")[0] == 2
    good = tmp_path / "good.cfg"
    good.write_text("format = csv\nmax_rank = 3\n")
    monkeypatch.setenv("SPHC_CONFIG", str(good))
    code, out, _ = run(capsys, "verify", "--table", "2")
    assert code == 0 and out.startswith("row_id,")


def test_deterministic_output(capsys):
    a = run(capsys, "census", "--group", "sp", "--n", "2", "--q", "2", "--cells")[1]
    b = run(capsys, "census", "--group", "sp", "--n", "2", "--q", "2", "--cells")[1]
    assert a == b


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "sphc.cli", "tables", "--series", "E",
                          "--rank", "6"], capture_output=True, text=True, check=True)
    assert "3A1" in out.stdout
