"""CLI and config layer: parsing diagnostics, CSV shape and determinism,
exit codes, and a fast figure preset end to end."""

import io
import json
import math

import pytest

from catops.cli import main
from catops.errors import ConfigError
from catops.sweep import parse_config, run_compute


def run_cfg(doc, threads=1):
    cfg = parse_config(doc)
    buf = io.StringIO()
    run_compute(cfg, buf, threads=threads)
    return buf.getvalue()


BASE = {
    "quantity": "normalization",
    "params": {"m": 1, "theta": 0.7, "phi": 0.0, "alpha0": [1.0, 0.0]},
}


def test_parse_rejects_bad_configs():
    bad = [
        ({}, "quantity"),
        ({"quantity": "nope", "params": BASE["params"]}, "quantity"),
        ({"quantity": "mandel_q"}, "params"),
        ({"quantity": "mandel_q", "params": {"m": 1, "theta": 0.7, "phi": 0.0}},
         "alpha0"),
        ({"quantity": "mandel_q", "params": dict(BASE["params"], junk=1)}, "junk"),
        ({"quantity": "mandel_q", "params": BASE["params"], "bogus": 1}, "bogus"),
        ({"quantity": "photocount", "params": BASE["params"]}, "xi"),
        ({"quantity": "photocount", "params": BASE["params"],
          "extras": {"xi": 1.5, "n_max": 5}}, "xi"),
        ({"quantity": "mandel_q",
          "params": dict(BASE["params"], m={"start": 1, "stop": 2, "count": 0})},
         "count"),
        ({"quantity": "mandel_q",
          "params": dict(BASE["params"], theta={"values": []})}, "values"),
        ({"quantity": "wigner",
          "params": dict(BASE["params"], m={"values": [1, 2]}),
          "extras": {"grid": {"re_min": -1, "re_max": 1, "im_min": -1,
                              "im_max": 1, "nx": 4, "ny": 4}}}, "swept"),
        ({"quantity": "fidelity",
          "params": dict(BASE["params"], parity="even")}, "parity"),
        ({"quantity": "mandel_q",
          "params": dict(BASE["params"], m=-2)}, "m"),
    ]
    for doc, needle in bad:
        with pytest.raises(ConfigError) as err:
            parse_config(doc)
        assert needle in str(err.value)


def test_sweep_rows_and_order():
    doc = {
        "quantity": "normalization",
        "params": {"m": {"values": [2, 1]}, "theta": 0.7, "phi": 0.0,
                   "alpha0": {"start": 0.5, "stop": 1.0, "count": 2}},
    }
    text = run_cfg(doc)
    lines = text.strip().split("\n")
    assert lines[0] == "m,alpha0,norm"
    keys = [tuple(l.split(",")[:2]) for l in lines[1:]]
    # lexicographic over the canonical axis order, honoring given value order
    assert keys == [("2", "0.5"), ("2", "1.0"), ("1", "0.5"), ("1", "1.0")]


def test_photocount_rows():
    doc = {
        "quantity": "photocount",
        "params": {"m": 1, "theta": 0.7, "phi": 0.0, "alpha0": [0.5, 0.0]},
        "extras": {"xi": 0.4, "n_max": 3},
    }
    lines = run_cfg(doc).strip().split("\n")
    assert lines[0] == "n,p"
    assert [l.split(",")[0] for l in lines[1:]] == ["0", "1", "2", "3"]
    total = sum(float(l.split(",")[1]) for l in lines[1:])
    assert 0.9 < total <= 1.0


def test_grid_quantity_csv():
    doc = {
        "quantity": "wigner",
        "params": {"m": 0, "theta": 0.7, "phi": 0.0, "alpha0": [1.0, 0.0]},
        "extras": {"grid": {"re_min": -2, "re_max": 2, "im_min": -2, "im_max": 2,
                            "nx": 5, "ny": 5}},
    }
    lines = run_cfg(doc).strip().split("\n")
    assert lines[0] == "re,im,w"
    assert len(lines) == 26
    center = lines[1 + 2 * 5 + 2].split(",")
    assert float(center[0]) == 0.0 and float(center[1]) == 0.0
    assert float(center[2]) == pytest.approx(-2 / math.pi, rel=1e-10)


def test_oracle_check_column_and_mismatch_path():
    doc = {
        "quantity": "squeezing",
        "params": {"m": {"values": [0, 1]}, "theta": 0.9, "phi": 0.0,
                   "alpha0": [0.3, 0.0]},
        "oracle_check": True,
    }
    lines = run_cfg(doc).strip().split("\n")
    assert lines[0] == "m,s,oracle_abs_diff"
    for line in lines[1:]:
        assert float(line.split(",")[2]) < 1e-10


def test_determinism_across_threads():
    doc = {
        "quantity": "mandel_q",
        "params": {"m": {"values": [1, 2]}, "theta": 0.8, "phi": 0.0,
                   "alpha0": {"start": 0.2, "stop": 2.0, "count": 7}},
    }
    assert run_cfg(doc, threads=1) == run_cfg(doc, threads=3)


def test_cli_exit_codes(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    out = tmp_path / "out.csv"
    cfg.write_text(json.dumps({
        "quantity": "normalization",
        "params": {"m": 0, "theta": 0.7, "phi": 0.0, "alpha0": [1.0, 0.0]},
        "output": str(out),
    }))
    assert main(["compute", "-c", str(cfg), "--threads", "1"]) == 0
    assert out.read_text().startswith("norm\n")

    cfg.write_text("{broken json")
    assert main(["compute", "-c", str(cfg)]) == 2
    cfg.write_text(json.dumps({"quantity": "nope", "params": {}}))
    assert main(["compute", "-c", str(cfg)]) == 2
    assert main(["compute", "-c", str(tmp_path / "missing.json")]) == 2
    assert main(["figure", "not_a_preset", "-o", str(tmp_path)]) == 2
    capsys.readouterr()


def test_figure_preset_end_to_end(tmp_path, capsys):
    assert main(["figure", "fig4a", "-o", str(tmp_path), "--threads", "1"]) == 0
    text = (tmp_path / "fig4a.csv").read_text()
    lines = text.strip().split("\n")
    assert lines[0] == "n,p"
    assert len(lines) == 14
    out = capsys.readouterr().out
    assert "fig4a" in out and "PASS" in out
