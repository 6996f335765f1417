import json

import pytest

from macdim import __version__
from macdim.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_avg_si1(capsys):
    code, out = run(capsys, "avg", "--model", "si1", "--lambda", "1")
    data = json.loads(out)
    assert code == 0
    assert data["C"] == "-Q + 1"
    assert data["average"] == "(s^3*Q^2*r - s^3*Q*r)/(t^2 - t)"
    assert data["version"] == __version__ and "s" in data["generators"]


def test_avg_empty(capsys):
    code, out = run(capsys, "avg", "--model", "si3", "--lambda", "0", "--format", "text")
    assert code == 0 and "average: 1" in out


def test_series_si5(capsys):
    code, out = run(capsys, "series", "--model", "si5", "--degree", "2")
    data = json.loads(out)
    assert set(data["coefficients"]) == {"0", "1", "2", "1,1"}


def test_degree_cap_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--degree", "99"])
    assert exc.value.code == 2


def test_env_caps_degree(capsys, monkeypatch):
    monkeypatch.setenv("MACDIM_MAX_DEGREE", "3")
    with pytest.raises(SystemExit):
        main(["verify", "--model", "si1", "--degree", "4"])


def test_unknown_model(capsys):
    code = main(["avg", "--model", "si11", "--lambda", "1"])
    assert code == 2
    assert "unknown model" in capsys.readouterr().err


def test_malformed_partition(capsys):
    assert main(["avg", "--model", "si1", "--lambda", "1,2"]) == 2


def test_verify_small(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, out = run(capsys, "verify", "--model", "si3", "--degree", "3",
                    "--checks", "annihilation,virasoro,conjugation,universal,dualpair", "--out", str(out_file))
    data = json.loads(out)
    assert code == 0
    assert data["suite"] == "verify"
    statuses = {r["check"]: r["status"] for r in data["records"]}
    assert statuses["virasoro.m=3"] == "skipped"  # its lowest shift exceeds the truncation
    assert set(statuses.values()) == {"pass", "skipped"}
    assert json.loads(out_file.read_text()) == data


def test_verify_is_deterministic(capsys):
    reports = []
    for _ in range(2):
        _, out = run(capsys, "verify", "--model", "si8", "--degree", "3", "--checks", "annihilation,conjugation")
        data = json.loads(out)
        data.pop("timing")
        reports.append(json.dumps(data, sort_keys=True))
    assert reports[0] == reports[1]
    assert '"skipped"' in reports[0]


def test_unknown_check(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--checks", "nonsense"])


def test_numeric_csv(capsys):
    code, out = run(capsys, "numeric", "--model", "si3", "--N", "2", "--q", "0.3", "--beta", "2",
                    "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "model,N,q,beta,params,lambda,numeric,symbolic,relerr,tailbound"
    assert len(lines) == 4


def test_numeric_json_with_params(capsys):
    code, out = run(capsys, "numeric", "--model", "si5", "--N", "2", "--q", "0.25",
                    "--params", "u1=1.0,u2=-0.5", "--lambda", "2")
    data = json.loads(out)
    assert code == 0 and data["rows"][0]["params"] == {"u1": 1.0, "u2": -0.5}


def test_numeric_invalid_config(capsys):
    assert main(["numeric", "--model", "si1"]) == 2


def test_selftest(capsys):
    code, out = run(capsys, "selftest")
    assert code == 0
    assert len(json.loads(out)["records"]) == 4
