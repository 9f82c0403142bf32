import json
import os
import subprocess
import sys

import pytest

from conftest import cert_path

from cyclepack.cli import main

CERTS = [cert_path(7, 5), cert_path(11, 4), cert_path(13, 4), cert_path(15, 3)]


def run_cli(args):
    """Invoke main() in-process, capturing stdout."""
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        try:
            code = main(args)
        except SystemExit as exc:
            code = exc.code
    return code, buf.getvalue()


def test_verify_all_fixtures_pass():
    code, out = run_cli(["verify"] + CERTS)
    assert code == 0
    for size in ("350", "748", "1534", "381"):
        assert size in out
    assert out.count("PASS") == 4


def test_verify_structured_output():
    code, out = run_cli(["verify", "--format", "structured", cert_path(15, 3)])
    assert code == 0
    data = json.loads(out)
    assert data[0]["expanded_size"] == 381 and data[0]["verdict"] == "PASS"


def test_verify_corrupted_file_fails(tmp_path):
    bad = tmp_path / "bad.cert"
    bad.write_text("p 7\nd 5\ngenerator 0 1 1 5 1\n0 5 6 6 7\n")
    code, _ = run_cli(["verify", str(bad)])
    assert code == 1


def test_verify_failing_claim(tmp_path):
    f = tmp_path / "claim.cert"
    f.write_text("p 5\nd 2\ngenerator 0 0\nclaim 3\n0 0\n")
    code, _ = run_cli(["verify", str(f)])
    assert code == 1


def test_verify_without_arguments_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2


def test_exact_small_instances():
    code, out = run_cli(["exact", "--p", "5", "--d", "1"])
    assert code == 0 and "weight 2 (optimal)" in out
    code, out = run_cli(["exact", "--p", "5", "--d", "2"])
    assert code == 0 and "weight 5 (optimal)" in out


def test_exact_with_generator_emits_certificate(tmp_path):
    out_path = tmp_path / "sol.cert"
    code, out = run_cli(["exact", "--p", "5", "--d", "2", "--generator", "2,1",
                         "--out", str(out_path)])
    assert code == 0
    assert out_path.exists()
    code, _ = run_cli(["verify", str(out_path)])
    assert code == 0


def test_exact_guard_trips():
    code, _ = run_cli(["exact", "--p", "15", "--d", "5"])
    assert code == 3


def test_search_emits_verifiable_certificate(tmp_path):
    report = tmp_path / "rep"
    code, out = run_cli(["search", "--p", "5", "--d", "2", "--generator", "0,0",
                         "--seed", "11", "--time", "3", "--target", "5",
                         "--report-dir", str(report)])
    assert code == 0
    assert "seed 11" in out
    cert_file = report / "best.cert"
    assert cert_file.exists()
    code, _ = run_cli(["verify", str(cert_file)])
    assert code == 0
    manifest = json.loads((report / "manifest.json").read_text())
    assert manifest["seed"] == 11
    assert manifest["command"] == "search"
    stats_lines = (report / "stats.jsonl").read_text().splitlines()
    assert stats_lines and all(json.loads(l) for l in stats_lines)
    assert (report / "trajectory.png").exists()


def test_search_prints_generated_seed():
    code, out = run_cli(["search", "--p", "4", "--d", "1", "--generator", "0",
                         "--time", "0.2", "--iterations", "5"])
    assert code == 0
    assert out.startswith("seed ")


def test_search_structured_format():
    code, out = run_cli(["search", "--p", "5", "--d", "2", "--generator", "2,1",
                         "--seed", "3", "--time", "2", "--target", "5",
                         "--format", "structured"])
    assert code == 0
    payload = json.loads(out.split("\n", 1)[1])
    assert payload["best_weight"] == 5
    assert payload["stats"]["iterations"] >= 0


def test_search_sweep_small():
    code, out = run_cli(["search", "--p", "5", "--d", "1", "--sweep",
                         "--seed", "1", "--time", "1", "--iterations", "20"])
    assert code == 0
    assert "best generator" in out


def test_search_sweep_parallel_jobs():
    code, out = run_cli(["search", "--p", "5", "--d", "2", "--sweep",
                         "--seed", "1", "--time", "2", "--iterations", "15",
                         "--jobs", "2"])
    assert code == 0
    assert "best generator" in out
    # deterministic ordering: one row per enumerated generator, in order
    rows = [l for l in out.splitlines() if l.startswith("generator ")]
    assert rows == sorted(rows, key=lambda r: r.split("->")[0])


def test_search_config_file(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("ball_radius=1\nmax_iterations=5\ntime_limit=1.0\n")
    code, out = run_cli(["search", "--p", "5", "--d", "2", "--generator", "0,0",
                         "--seed", "2", "--config", str(cfg)])
    assert code == 0


def test_bounds_text_and_byte_stability():
    code1, out1 = run_cli(["bounds"])
    code2, out2 = run_cli(["bounds"])
    assert code1 == code2 == 0
    assert out1 == out2
    assert "k350-401j" in out1
    assert "c(C_7) >= 350^(1/5) > 3.227108" in out1
    assert "c(C_13) >= 247^(1/3) > 6.274305" in out1


def test_bounds_structured_and_report(tmp_path):
    report = tmp_path / "rep"
    code, out = run_cli(["bounds", "--format", "structured",
                         "--report-dir", str(report)])
    assert code == 0
    data = json.loads(out)
    assert len(data["cells"]) == 30
    assert (report / "bounds.csv").exists()
    assert (report / "capacity.csv").exists()
    assert (report / "bounds.json").exists()
    assert (report / "capacity.png").exists()
    assert (report / "bounds.png").exists()
    csv_lines = (report / "bounds.csv").read_text().splitlines()
    assert csv_lines[0] == "p,d,lower,upper,lower_key,upper_key"
    assert len(csv_lines) == 31


def test_orbits_dump_and_export(tmp_path):
    export = tmp_path / "graph.txt"
    code, out = run_cli(["orbits", "--p", "7", "--d", "3", "--generator", "1,2,4",
                         "--export", str(export)])
    assert code == 0
    assert "admissible:" in out
    from cyclepack.solver import parse_edge_list

    parse_edge_list(export.read_text())


def test_orbits_structured():
    code, out = run_cli(["orbits", "--p", "5", "--d", "2", "--format", "structured"])
    assert code == 0
    data = json.loads(out)
    assert data["orbit_count"] == 25 and data["admissible"] == 25


def test_orbits_guard():
    code, _ = run_cli(["orbits", "--p", "15", "--d", "5"])
    assert code == 3


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cyclepack.cli", "bounds"],
                          capture_output=True, text=True,
                          cwd=os.path.join(os.path.dirname(__file__), ".."),
                          env={**os.environ,
                               "PYTHONPATH": os.path.join(os.path.dirname(__file__), "..", "src")})
    assert proc.returncode == 0
    assert "k350-401j" in proc.stdout
