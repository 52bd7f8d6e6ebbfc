import json
import subprocess
import sys

from fockpath.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decomp_single_move(capsys):
    code, out, _ = run(capsys, "decomp", "--e", "2", "--col", "2", "--row", "1,1", "--json")
    assert code == 0
    record = json.loads(out)
    assert record == {
        "A": [1],
        "B": [2],
        "e": 2,
        "lambda": [1, 1],
        "mu": [2],
        "paths": 1,
        "poly": {"1": 1},
        "r": 1,
    }


def test_decomp_diagonal(capsys):
    code, out, _ = run(capsys, "decomp", "--e", "2", "--col", "2", "--row", "2")
    assert code == 0
    assert "= 1" in out


def test_decomp_failed_pairing_is_zero(capsys):
    code, out, _ = run(capsys, "decomp", "--e", "2", "--col", "3,1", "--row", "4", "--json")
    assert code == 0
    record = json.loads(out)
    assert record["poly"] == {}
    assert record["paths"] == 0


def test_decomp_not_covered_exits_2(capsys):
    code, _, err = run(capsys, "decomp", "--e", "3", "--col", "3", "--row", "1,1,1")
    assert code == 2
    assert "not covered" in err


def test_decomp_usage_error(capsys):
    code, _, err = run(capsys, "decomp", "--e", "2", "--col", "2")
    assert code == 2


def test_decomp_explicit_move(capsys):
    code, out, _ = run(
        capsys, "decomp", "--e", "2", "--col", "2", "--r", "1", "--add", "1",
        "--remove", "2", "--json",
    )
    assert code == 0
    assert json.loads(out)["poly"] == {"1": 1}


def test_moves_listing(capsys):
    code, out, _ = run(capsys, "moves", "--e", "2", "--lam", "2", "--json")
    assert code == 0
    records = json.loads(out)
    assert any(rec["lambda"] == [1, 1] and rec["poly"] == {"1": 1} for rec in records)


def test_paths_listing(capsys):
    code, out, _ = run(
        capsys, "paths", "--plus", "2,3,5,9", "--minus", "1,4,6,7,8", "--json"
    )
    assert code == 0
    records = json.loads(out)
    assert sorted((rec["norm"] for rec in records), reverse=True) == [10, 8, 8, 6, 4]


def test_paths_wellnested(capsys):
    code, out, _ = run(
        capsys, "paths", "--plus", "3,5,6", "--minus", "1,2,4",
        "--add", "1,2", "--remove", "5,6", "--json",
    )
    assert code == 0
    records = json.loads(out)
    assert sorted((rec["norm"] for rec in records), reverse=True) == [8, 6, 4]


def test_oracle_coefficient(capsys):
    code, out, _ = run(capsys, "oracle", "--e", "2", "--mu", "2", "--lam", "1,1", "--json")
    assert code == 0
    assert json.loads(out)["poly"] == {"1": 1}


def test_oracle_rejects_singular(capsys):
    code, _, err = run(capsys, "oracle", "--e", "2", "--mu", "1,1")
    assert code == 2
    assert "singular" in err


def test_oracle_cache_roundtrip(capsys, tmp_path):
    cache = str(tmp_path / "oracle-cache")
    code, out, _ = run(capsys, "oracle", "--e", "2", "--n", "5", "--cache", cache, "--json")
    assert code == 0
    status = json.loads(out)
    assert status["roundtrip"] == "ok"
    # corrupt one byte: the corrupt file is rejected and rebuilt on demand
    path = status["written"]
    data = bytearray(open(path, "rb").read())
    data[len(data) // 2] ^= 0xFF
    open(path, "wb").write(bytes(data))
    code, out, _ = run(capsys, "oracle", "--e", "2", "--n", "5", "--cache", cache, "--json")
    assert code == 0
    assert json.loads(out)["roundtrip"] == "ok"


def test_verify_consistency_small(capsys):
    code, out, _ = run(capsys, "verify", "consistency", "--max-n", "4", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["ok"] and report["checked"] > 0


def test_verify_formula_small(capsys):
    code, out, _ = run(
        capsys, "verify", "formula", "--e", "2", "--max-n", "6", "--json"
    )
    assert code == 0
    assert json.loads(out)["ok"]


def test_verify_bijection_small(capsys):
    code, out, _ = run(
        capsys, "verify", "bijection", "--max-positions", "5", "--samples", "50", "--json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["ok"] and report["notes"]["sampled"] == 50


def test_verify_bijection_report_lines(capsys, tmp_path):
    target = tmp_path / "report.jsonl"
    code, _, _ = run(
        capsys, "verify", "bijection", "--max-positions", "4", "--samples", "10",
        "--report", str(target), "--json",
    )
    assert code == 0
    lines = target.read_text().splitlines()
    assert lines
    for line in lines:
        record = json.loads(line)
        assert set(record) == {"T", "A", "B", "ok", "normsL", "normsR"}
        assert record["ok"] is True


def test_render_golden(capsys):
    code, out, _ = run(capsys, "render", "--plus", "2", "--minus", "1")
    assert code == 0
    assert out.rstrip("\n") == "\\/"


def test_render_svg_to_file(capsys, tmp_path):
    target = tmp_path / "path.svg"
    code, out, _ = run(
        capsys, "render", "--plus", "2,3,5,9", "--minus", "1,4,6,7,8",
        "--format", "svg", "--out", str(target),
    )
    assert code == 0
    body = target.read_text()
    assert body.startswith("<svg") and "polyline" in body


def test_render_rejects_non_pairs(capsys):
    code, _, err = run(
        capsys, "render", "--plus", "2", "--minus", "1", "--flatten", "1:2"
    )
    assert code == 2


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "fockpath", "decomp", "--e", "2", "--col", "2",
         "--row", "1,1", "--json"],
        capture_output=True, text=True,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["poly"] == {"1": 1}


def test_determinism_of_verify(capsys):
    args = ["verify", "bijection", "--max-positions", "4", "--samples", "25",
            "--seed", "7", "--json"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert (code1, out1) == (code2, out2)
