from __future__ import annotations

import json
import logging
from functools import partial
from typing import TYPE_CHECKING

import pytest

from cli.commands.verify_identities import verify_ensemble
from cli.config import ExperimentConfig, build_config, load_config_file
from cli.exceptions import ConfigError
from cli.parser import build_parser
from cli.report import read_csv_report, render_report, write_manifest
from cli.runner import EXIT_INVALID, EXIT_NUMERIC, EXIT_OK, chain_sizes, farm_samples
from cli.utils import DegreeRule, OutputFormat, SupportedCommands, degree_for, parse_ensembles, parse_int_list
from ensemble.spec import EnsembleSpec
from graphs.counting import count_shape
from graphs.io import read_records, write_records
from graphs.shapes import cycle
from main import main

if TYPE_CHECKING:
    from pathlib import Path

    from graphs.graph import Graph


def test_list_parsers() -> None:
    assert parse_int_list("64, 128,192") == (64, 128, 192)
    assert parse_ensembles("6:3,8:3") == ((6, 3), (8, 3))
    with pytest.raises(ConfigError):
        parse_int_list("64,x")
    with pytest.raises(ConfigError):
        parse_ensembles("6-3")


def test_degree_rules(caplog: pytest.LogCaptureFixture) -> None:
    assert degree_for(64, DegreeRule.HALF) == 32
    assert degree_for(10, DegreeRule.FIXED, 3) == 3
    with caplog.at_level(logging.WARNING):
        assert degree_for(15, DegreeRule.HALF) == 8
        assert degree_for(7, DegreeRule.N_OVER_LOG) == 4
    assert "infeasible" in caplog.text
    with pytest.raises(ConfigError):
        degree_for(7, DegreeRule.FIXED, 3)
    with pytest.raises(ConfigError):
        degree_for(8, DegreeRule.FIXED)


def test_default_degree_rule() -> None:
    assert ExperimentConfig(SupportedCommands.VARIANCE_REPORT, n_list=(16, 32)).degrees() == [(16, 8), (32, 16)]
    assert ExperimentConfig(SupportedCommands.VARIANCE_REPORT, n_list=(16,), d=3).degrees() == [(16, 3)]


def test_config_precedence(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    config_file = tmp_path / "run.conf"
    config_file.write_text("# sweep\nthreads = 2\nchains = 5\nseed = 9\nn-list = 16,32\n", encoding="utf-8")
    monkeypatch.setenv("REGFACTOR_THREADS", "3")
    args = build_parser().parse_args(["variance-report", "--shape", "C3", "--config", str(config_file), "--seed", "11"])
    config = build_config(args)
    assert (config.threads, config.chains, config.seed) == (3, 5, 11)
    assert config.n_list == (16, 32)
    assert config.shapes == ("C3",)


def test_json_config_and_unknown_keys(tmp_path: Path) -> None:
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"samples": 7, "ell-max": 4}), encoding="utf-8")
    assert load_config_file(good) == {"samples": 7, "ell_max": 4}
    bad = tmp_path / "bad.conf"
    bad.write_text("colour = blue\n", encoding="utf-8")
    args = build_parser().parse_args(["proofcheck", "--config", str(bad)])
    with pytest.raises(ConfigError, match="colour"):
        build_config(args)


def test_config_validation() -> None:
    args = build_parser().parse_args(["trace-stats", "--n-list", "16", "--ell-max", "7"])
    with pytest.raises(ConfigError, match="ell-max"):
        build_config(args)


def test_render_report_csv_and_json() -> None:
    columns = ("n", "ratio", "passed")
    assert render_report([], columns, OutputFormat.CSV) == "n,ratio,passed\n"
    text = render_report([{"n": 64, "ratio": 0.5, "passed": True}], columns, OutputFormat.CSV)
    assert text.splitlines() == ["n,ratio,passed", "64,0.5,true"]
    assert read_csv_report(text) == [{"n": "64", "ratio": "0.5", "passed": "true"}]
    payload = json.loads(render_report([{"n": 64, "ratio": float("nan"), "passed": False}], columns, OutputFormat.JSON))
    assert payload == [{"n": 64, "ratio": None, "passed": False}]
    with pytest.raises(ValueError, match="missing"):
        render_report([{"n": 1}], columns, OutputFormat.CSV)


def test_write_manifest(tmp_path: Path) -> None:
    manifest = write_manifest(tmp_path / "out.csv", {"seed": 3}, 1.5, {"m0": 45.0})
    assert manifest.name == "out.csv.manifest.json"
    payload = json.loads(manifest.read_text(encoding="utf-8"))
    assert payload["config"] == {"seed": 3}
    assert payload["wall_clock_seconds"] == 1.5
    assert payload["m0"] == 45.0
    assert "version" in payload


def test_chain_sizes() -> None:
    assert chain_sizes(10, 4) == [3, 3, 2, 2]
    assert chain_sizes(8, 8) == [1] * 8
    assert chain_sizes(3, 8) == [1, 1, 1]


def test_farm_samples_independent_of_workers() -> None:
    base = EnsembleSpec(12, 4, seed=5)
    measure = partial(count_shape, pattern=cycle(3))
    inline = farm_samples(base, 12, 4, 1, measure)
    pooled = farm_samples(base, 12, 4, 2, measure)
    assert inline == pooled
    assert len(inline) == 12


def test_enumerate_writes_records_and_manifest(tmp_path: Path) -> None:
    out = tmp_path / "g63.txt"
    assert main(["enumerate", "--n", "6", "--d", "3", "--out", str(out)]) == EXIT_OK
    graphs = read_records(out.read_text(encoding="utf-8"))
    assert len(graphs) == 70
    manifest = json.loads((tmp_path / "g63.txt.manifest.json").read_text(encoding="utf-8"))
    assert manifest["graph_count"] == 70
    assert manifest["config"]["subcommand"] == "enumerate"


def test_sample_records_are_regular(tmp_path: Path) -> None:
    out = tmp_path / "sampled.txt"
    argv = ["sample", "--n", "10", "--d", "4", "--count", "6", "--thin", "40", "--chains", "2", "--out", str(out)]
    assert main(argv) == EXIT_OK
    graphs = read_records(out.read_text(encoding="utf-8"))
    assert len(graphs) == 6
    assert all(g.is_regular(4) for g in graphs)
    manifest = json.loads((tmp_path / "sampled.txt.manifest.json").read_text(encoding="utf-8"))
    assert manifest["config"]["samples"] == 6
    assert manifest["config"]["thinning"] == 40


@pytest.mark.parametrize(
    "flags",
    [
        ["--count", "3", "--thin", "9"],
        ["--samples", "3", "--thinning", "9"],
    ],
)
def test_sample_flag_spellings(flags: list[str]) -> None:
    args = build_parser().parse_args(["sample", "--n", "10", "--d", "4", *flags])
    assert args.samples == 3
    assert args.thinning == 9


def test_variance_report_is_reproducible(tmp_path: Path) -> None:
    outputs = []
    for threads in ("1", "2"):
        out = tmp_path / f"variance-{threads}.csv"
        argv = ["variance-report", "--shape", "C3", "--n-list", "12,16", "--samples", "40", "--chains", "4"]
        assert main([*argv, "--seed", "1", "--threads", threads, "--out", str(out)]) == EXIT_OK
        outputs.append(out.read_text(encoding="utf-8"))
    assert outputs[0] == outputs[1]
    rows = read_csv_report(outputs[0])
    assert [(row["n"], row["d"]) for row in rows] == [("12", "6"), ("16", "8")]
    assert all(float(row["predicted_var"]) > 0 for row in rows)


def test_trace_stats_rows(tmp_path: Path) -> None:
    out = tmp_path / "traces.csv"
    argv = ["trace-stats", "--n-list", "12", "--samples", "30", "--chains", "3", "--ell-max", "4", "--out", str(out)]
    assert main(argv) == EXIT_OK
    rows = read_csv_report(out.read_text(encoding="utf-8"))
    assert [row["ell"] for row in rows] == ["3", "4"]


def test_clt_report_rows(tmp_path: Path) -> None:
    out = tmp_path / "clt.csv"
    argv = ["clt-report", "--n-list", "12", "--samples", "500", "--chains", "4", "--thin", "60", "--seed", "2"]
    assert main([*argv, "--out", str(out)]) == EXIT_OK
    rows = read_csv_report(out.read_text(encoding="utf-8"))
    assert [(row["shape"], row["partner"]) for row in rows] == [("C3", ""), ("C4", ""), ("C3", "C4")]
    c3, c4, pair = rows
    assert float(c3["expectation"]) == 0.0
    assert float(c4["expectation"]) == pytest.approx(2 * 12**2 / 8)
    assert all(0 <= float(row["ks_distance"]) <= 1 for row in (c3, c4))
    assert c3["mean_within_3se"] in {"true", "false"}
    assert -1 <= float(pair["correlation"]) <= 1
    assert pair["ks_distance"] == ""


def test_clt_report_needs_enough_samples() -> None:
    argv = ["clt-report", "--n-list", "12", "--samples", "100", "--chains", "2", "--thin", "60"]
    assert main(argv) == EXIT_NUMERIC


@pytest.mark.slow
def test_clt_report_dense_ensemble(tmp_path: Path) -> None:
    out = tmp_path / "clt.csv"
    argv = ["clt-report", "--n-list", "128", "--samples", "2000", "--chains", "8", "--threads", "4", "--seed", "11"]
    assert main([*argv, "--burn-in", "200000", "--thin", "8192", "--out", str(out)]) == EXIT_OK
    c3, c4, pair = read_csv_report(out.read_text(encoding="utf-8"))
    for row in (c3, c4):
        assert row["d"] == "64"
        assert float(row["ks_distance"]) < 0.05
        assert abs(float(row["skew"])) < 0.15
        assert abs(float(row["ex_kurtosis"])) < 0.3
    assert float(c4["expectation"]) == pytest.approx(2 * 128**2 / 8)
    assert c4["mean_within_3se"] == "true"
    assert abs(float(pair["correlation"])) < 0.1


def test_proofcheck_single_inequality(tmp_path: Path) -> None:
    out = tmp_path / "proofcheck.json"
    argv = ["proofcheck", "--lemma", "2.1", "--trials", "1000", "--format", "json", "--out", str(out)]
    assert main(argv) == EXIT_OK
    (row,) = json.loads(out.read_text(encoding="utf-8"))
    assert row["lemma"] == "modulus"
    assert row["passed"] is True
    manifest = json.loads((tmp_path / "proofcheck.json.manifest.json").read_text(encoding="utf-8"))
    assert 10 < manifest["m0"] <= manifest["m0_domain"]


def test_proofcheck_unknown_inequality_is_invalid() -> None:
    assert main(["proofcheck", "--lemma", "2.9", "--trials", "10"]) == EXIT_INVALID


def test_reduce_path_to_constant(tmp_path: Path) -> None:
    out = tmp_path / "p3.txt"
    assert main(["reduce", "--shape", "P3", "--out", str(out)]) == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 1
    assert lines[0].endswith("| const")


def test_factors_on_records(tmp_path: Path, g63: list[Graph]) -> None:
    records = tmp_path / "g63.txt"
    records.write_text(write_records(g63[:4]), encoding="utf-8")
    out = tmp_path / "factors.csv"
    argv = ["factors", "--graph", str(records), "--shapes", "C3,P3", "--d", "3", "--out", str(out)]
    assert main(argv) == EXIT_OK
    rows = read_csv_report(out.read_text(encoding="utf-8"))
    assert len(rows) == 8
    assert all(float(row["raw"]) == pytest.approx(-15.0) for row in rows if row["shape"] == "P3")


def test_factors_with_several_shapes(tmp_path: Path, g63: list[Graph]) -> None:
    records = tmp_path / "g63.txt"
    records.write_text(write_records(g63[:3]), encoding="utf-8")
    out = tmp_path / "factors.csv"
    argv = ["factors", "--graph", str(records), "--shapes", "C3,C4,C5,P4", "--d", "3", "--format", "csv"]
    assert main([*argv, "--out", str(out)]) == EXIT_OK
    rows = read_csv_report(out.read_text(encoding="utf-8"))
    assert [row["shape"] for row in rows[:4]] == ["C3", "C4", "C5", "P4"]
    assert len(rows) == 12
    assert all(row["normalized"] for row in rows if row["shape"] != "P4")
    assert not any(row["normalized"] for row in rows if row["shape"] == "P4")


def test_verify_identities_small_ensemble(tmp_path: Path) -> None:
    out = tmp_path / "identities.csv"
    assert main(["verify-identities", "--ensembles", "6:3", "--out", str(out)]) == EXIT_OK
    rows = read_csv_report(out.read_text(encoding="utf-8"))
    assert rows
    assert all(row["passed"] == "true" for row in rows)


@pytest.mark.slow
def test_identities_hold_on_eight_vertices() -> None:
    rows = verify_ensemble(8, 3)
    assert {row["ensemble"] for row in rows} == {"8:3"}
    assert "p4-variance-nine-c3" in {row["identity"] for row in rows}
    assert all(row["passed"] for row in rows)


@pytest.mark.parametrize(
    "argv",
    [
        ["variance-report", "--shape", "C3", "--n-list", "16", "--samples", "0"],
        ["enumerate", "--n", "7", "--d", "3"],
        ["variance-report", "--shape", "C3", "--n-list", "15", "--d-rule", "fixed", "--d", "3"],
        ["clt-report", "--n-list", "12", "--shapes", "P3", "--samples", "500"],
    ],
)
def test_invalid_configuration_exit_status(argv: list[str]) -> None:
    assert main(argv) == EXIT_INVALID
