import json

import pytest

from wdp import cli


def run_cli(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr().out
    return code, out


def test_compute_json(capsys):
    code, out = run_cli(["compute", "--family", "q4minus", "--class", "-K",
                         "--phi", "phiF"], capsys)
    assert code == 0
    rec = json.loads(out)
    assert rec["value"] == "8" and rec["kind"] == "W"
    assert rec["family"] == "q4minus" and rec["class"] == "-K"


def test_compute_raw_and_gw(capsys):
    code, out = run_cli(["compute", "--family", "q4minus", "--class", "-K",
                         "--gw", "--raw"], capsys)
    assert code == 0
    assert int(out.strip()) % 4 == 0  # 12, congruent to the table value 8


def test_compute_not_compatible(capsys):
    code, out = run_cli(["compute", "--family", "q0minus", "--class", "-K",
                         "--phi", "phiF"], capsys)
    assert code == 0
    assert json.loads(out)["value"] == "0"


def test_compute_parse_error(capsys):
    code = cli.main(["compute", "--family", "q4minus", "--class", "-Z"])
    assert code == 2


def test_table_subset(capsys):
    code, out = run_cli(["table", "--families", "q1plus", "--classes", "-2K",
                         "--phi", "phi0"], capsys)
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 1 and rows[0]["value"] == "8"


def test_table_csv_jobs(capsys):
    code, out = run_cli(["table", "--families", "q4minus,q1minus",
                         "--classes", "-K", "--csv", "--jobs", "2"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("family,")
    assert len(lines) == 5  # header + 2 families x 2 phis


def test_cache_roundtrip(tmp_path, capsys):
    path = tmp_path / "w.cache"
    code, out1 = run_cli(["--cache", str(path), "compute", "--family",
                          "q4minus", "--class", "-K", "--raw"], capsys)
    assert code == 0 and path.exists()
    code, out2 = run_cli(["--cache", str(path), "compute", "--family",
                          "q4minus", "--class", "-K", "--raw"], capsys)
    assert out1 == out2


def test_verify_congruence_suite(capsys):
    code, out = run_cli(["verify", "congruence", "--kmax", "2",
                         "--family", "q4minus"], capsys)
    payload = json.loads(out)
    assert payload["suite"] == "congruence"
    assert payload["passed"] and code == 0
    assert any("D=" in c["name"] for c in payload["checks"])


def test_config_dir_override(tmp_path, capsys):
    # an override directory replaces a built-in preset wholesale
    from importlib import resources

    src = (resources.files("wdp") / "presets" / "q4minus.cfg").read_text()
    (tmp_path / "q4minus.cfg").write_text(src)
    code, out = run_cli(["--config-dir", str(tmp_path), "compute",
                         "--family", "q4minus", "--class", "-K", "--raw"],
                        capsys)
    assert code == 0 and out.strip() == "8"
