import csv
import io
import json

import pytest

from altsum import cli
from altsum.series import bivariate_distribution, partition_numbers_pentagonal


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_dist_small(capsys):
    code, out, _ = run(capsys, "dist", "--n", "4")
    assert code == 0
    assert rows(out) == [["n", "a", "count"], ["4", "0", "2"], ["4", "2", "2"], ["4", "4", "1"], ["4", "sum", "5"]]
    code, out, _ = run(capsys, "dist", "--n", "0")
    assert rows(out)[1:] == [["0", "0", "1"], ["0", "sum", "1"]]


def test_dist_2000(tmp_path, capsys):
    path = tmp_path / "d.csv"
    script = tmp_path / "plot.gp"
    code, _, _ = run(capsys, "dist", "--n", "2000", "--max-order", "2000", "--out", str(path),
                     "--plot-script", str(script))
    assert code == 0
    body = rows(path.read_text())[1:]
    data, summary = body[:-1], body[-1]
    assert len(data) == 1001 and all(int(a) % 2 == 0 for _, a, _ in data)
    assert int(summary[2]) == sum(int(c) for *_, c in data) == partition_numbers_pentagonal(2000)[2000]
    assert str(path) in script.read_text()


def test_dist_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "dist", "--n", "60", "--out", str(a))
    run(capsys, "dist", "--n", "60", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_dist_invariant_violation(monkeypatch, capsys):
    monkeypatch.setattr(cli, "partition_numbers_pentagonal", lambda n: [0] * (n + 1))
    code, _, err = run(capsys, "dist", "--n", "5")
    assert code == 3 and "invariant" in err


@pytest.mark.parametrize("argv", [
    ["dist", "--n", "600"],
    ["dist", "--n", "-1"],
    ["dist"],
    ["moments", "--n", "4", "--m-list", "0"],
    ["moments", "--n", "4", "--m-list", "a,b"],
    ["erfc-fit", "--n-list", "0"],
    ["verify", "--suite", "nope"],
    ["verify", "--suite", "saddle", "--n", "10"],
])
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == 2


def test_moments_json_and_csv(capsys):
    code, out, _ = run(capsys, "moments", "--n", "4", "--m-list", "1,2")
    recs = json.loads(out)
    assert code == 0
    assert [r["A_m"] for r in recs] == ["8", "24"]
    assert [r["E_m_exact"] for r in recs] == ["8/5", "24/5"]
    code, out, _ = run(capsys, "moments", "--n", "4", "--m-list", "1", "--format", "csv")
    table = rows(out)
    assert table[0] == cli.MOMENT_FIELDS and table[1][2] == "8"


def test_moments_small_and_large(capsys):
    _, out, _ = run(capsys, "moments", "--n", "1", "--m-list", "1")
    rec = json.loads(out)[0]
    assert rec["E_m_exact"] == "1" and float(rec["ratio"]) == float(rec["ratio"])
    _, out, _ = run(capsys, "moments", "--n", "2000", "--m-list", "1")
    assert 0.5 <= float(json.loads(out)[0]["ratio"]) <= 1.5


def test_erfc_fit(capsys):
    code, out, _ = run(capsys, "erfc-fit", "--n-list", "1,100,400", "--max-order", "400")
    ks = [float(r[1]) for r in rows(out)[1:]]
    assert code == 0 and ks == sorted(ks, reverse=True) and 0 <= ks[0] <= 1


def test_omega_golden(tmp_path, capsys):
    f = tmp_path / "chain.txt"
    f.write_text("# chain of three\n1/((1 - x1*l1)(1 - x2*l2*l1^-1)(1 - x3*l3*l2^-1))\n")
    code, out, _ = run(capsys, "omega", "--file", str(f), "--eliminate", "l1,l2,l3")
    assert code == 0 and out.strip() == "1/((1-x1)(1-x1*x2)(1-x1*x2*x3))"
    f.write_text("l1^-1*l2^-1 * 1/((1 - x1*l1)(1 - x2*l2*l1^-1))")
    _, out, _ = run(capsys, "omega", "--file", str(f))
    assert out.strip() == "x1^2*x2/((1-x1)(1-x1*x2))"


def test_omega_expand_matches_dist(tmp_path, monkeypatch, capsys):
    from altsum import omega

    f = tmp_path / "chain50.txt"
    f.write_text(str(omega.chain_crude_form(50)))
    out_csv = tmp_path / "coef.csv"
    code, _, _ = run(capsys, "omega", "--file", str(f), "--substitute", "alternating", "--expand", "50",
                     "--out", str(out_csv))
    assert code == 0
    got = rows(out_csv.read_text())[1:]
    expect = []
    for n in range(51):
        _, out, _ = run(capsys, "dist", "--n", str(n))
        expect += [r for r in rows(out)[1:] if r[1] != "sum"]
    assert got == expect


def test_omega_errors(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("1/((1 - x1*l1)(1 - x2*l1))")
    code, _, err = run(capsys, "omega", "--file", str(f))
    assert code == 2 and "l1" in err
    f.write_text("1/((1 - w))")
    code, _, err = run(capsys, "omega", "--file", str(f))
    assert code == 2 and "position" in err


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "dilog"],
    ["verify", "--suite", "em"],
    ["verify", "--suite", "saddle", "--n", "10000", "--m", "1"],
    ["verify", "--suite", "minor", "--n", "2000"],
    ["verify", "--suite", "circle", "--m", "1"],
])
def test_verify_suites_pass(argv, capsys):
    code, out, _ = run(capsys, *argv)
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    for c in rep["checks"]:
        assert {"value", "tolerance", "passed"} <= set(c)


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "circle", "--m", "2", "--n-list", "1000", "--samples", "20")
    assert code == 1 and not json.loads(out)["passed"]
