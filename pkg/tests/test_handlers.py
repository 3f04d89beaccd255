#!/usr/bin/env python3
"""
Tests for the command handlers, driven through the command line.

Covers output layout, exit codes, --out handling and argument validation
for every subcommand.
"""

import logging
from pathlib import Path
from typing import Callable

import pytest

from sheaf_communities.config import DynamicsConfig
from sheaf_communities.handlers import BaseHandler, DetectionHandlers
from sheaf_communities.main import SheafCommunityApp, build_parser
from sheaf_communities.models import Graph
from sheaf_communities.utils import ValidationError

pytestmark = pytest.mark.integration

Cli = Callable[..., tuple]

ONE_CLUSTER_KARATE = "cluster 0: " + " ".join(str(v) for v in range(34)) + "\nQ = 0.000000\nstatus: converged\n"


class TestCohomologyCommand:
    """Test cases for the cohomology command."""

    def test_constant(self, cli: Cli) -> None:
        assert cli("cohomology", "--sheaf", "constant:1") == (0, "h0 = 1, h1 = 45\n")

    def test_constant_higher_dimension(self, cli: Cli) -> None:
        assert cli("cohomology", "--sheaf", "constant:2") == (0, "h0 = 2, h1 = 90\n")

    def test_twisted(self, cli: Cli) -> None:
        assert cli("cohomology", "--sheaf", "twisted") == (0, "h0 = 0, h1 = 0\n")

    def test_edge_projection(self, cli: Cli) -> None:
        assert cli("cohomology", "--sheaf", "edgeproj") == (0, "h0 = 78, h1 = 0\n")

    def test_graph_file(self, cli: Cli, tmp_path: Path) -> None:
        (tmp_path / "two.edges").write_text("0 1\n2 3\n", encoding="utf-8")
        assert cli("cohomology", "--sheaf", "constant", "--graph", "two.edges") == (0, "h0 = 2, h1 = 0\n")

    def test_unknown_sheaf(self, cli: Cli) -> None:
        assert cli("cohomology", "--sheaf", "mobius") == (1, "")


class TestDetectionCommands:
    """Test cases for single detection runs."""

    def test_deterministic_keep_all(self, cli: Cli) -> None:
        assert cli("deterministic", "--a", "0", "--b", "1") == (0, ONE_CLUSTER_KARATE)

    def test_deterministic_best_point(self, cli: Cli) -> None:
        code, output = cli("deterministic", "--a", "0.3", "--b", "2.25")
        assert code == 0
        lines = output.splitlines()
        assert sum(line.startswith("cluster ") for line in lines) == 4
        assert lines[-2] == "Q = 0.406969"
        assert lines[-1] == "status: converged"

    def test_nonconstant_keep_all(self, cli: Cli) -> None:
        assert cli("nonconstant", "--p", "1", "--seed", "7") == (0, ONE_CLUSTER_KARATE)

    def test_nonconstant_seeded(self, cli: Cli) -> None:
        first = cli("nonconstant", "--p", "0.1", "--seed", "3")
        assert first == cli("nonconstant", "--p", "0.1", "--seed", "3")

    def test_constant_consensus(self, cli: Cli) -> None:
        assert cli("constant", "--d", "0.5", "--seed", "1") == (0, ONE_CLUSTER_KARATE)

    def test_constant_abort_exit_code(self, cli: Cli) -> None:
        assert cli("constant", "--d", "3", "--tmax", "0.02", "--dt", "0.01") == (2, "status: aborted\n")

    def test_verbose(self, cli: Cli, tmp_path: Path) -> None:
        (tmp_path / "tri.edges").write_text("0 1\n1 2\n0 2\n", encoding="utf-8")
        code, output = cli("deterministic", "--graph", "tri.edges", "--a", "1", "--b", "-1", "--verbose")
        assert code == 0
        assert output.splitlines() == [
            "cluster 0: 0 1 2",
            "Q = 0.000000",
            "primary clusters: 3",
            "merge: vertex 0 -> cluster 1 (dQ = 0.111111)",
            "merge: vertex 2 -> cluster 1 (dQ = 0.222222)",
            "status: converged",
        ]

    def test_one_based_file(self, cli: Cli, tmp_path: Path) -> None:
        (tmp_path / "tri.edges").write_text("1 2\n2 3\n3 1\n", encoding="utf-8")
        code, output = cli("deterministic", "--graph", "tri.edges", "--one-based", "--a", "0", "--b", "1")
        assert code == 0
        assert output.startswith("cluster 0: 0 1 2\n")

    def test_out_file(self, cli: Cli, tmp_path: Path) -> None:
        code, output = cli("deterministic", "--a", "0", "--b", "1", "--out", "result.txt")
        assert (code, output) == (0, "")
        assert (tmp_path / "result.txt").read_text(encoding="utf-8") == ONE_CLUSTER_KARATE

    def test_isolated_vertex_is_runtime_error(self, cli: Cli, tmp_path: Path) -> None:
        (tmp_path / "iso.edges").write_text("V 3\n0 1\n", encoding="utf-8")
        assert cli("nonconstant", "--graph", "iso.edges", "--p", "0.5") == (2, "")

    @pytest.mark.parametrize(
        "argv",
        [
            ("nonconstant", "--p", "1.5"),
            ("deterministic", "--a", "2"),
            ("constant", "--phi", "7"),
            ("constant", "--d", "-1"),
            ("constant", "--eps", "1.5"),
            ("constant", "--dt", "5", "--tmax", "1"),
            ("nonconstant", "--seed", "-4"),
            ("nonconstant", "--graph", "missing.edges"),
            ("nonconstant", "--env-file", "missing.env"),
            ("nonconstant", "--workers", "0"),
            ("teleport",),
            (),
        ],
    )
    def test_usage_errors(self, cli: Cli, argv: tuple) -> None:
        assert cli(*argv) == (1, "")

    def test_bad_out_directory_writes_nothing(self, cli: Cli, tmp_path: Path) -> None:
        code, _ = cli("deterministic", "--out", "nowhere/result.txt")
        assert code == 1
        assert not (tmp_path / "nowhere").exists()

    def test_malformed_graph_file(self, cli: Cli, tmp_path: Path) -> None:
        (tmp_path / "bad.edges").write_text("0 1\n1 x\n", encoding="utf-8")
        assert cli("deterministic", "--graph", "bad.edges") == (2, "")

    def test_graph_file_with_foreign_digits(self, cli: Cli, tmp_path: Path) -> None:
        (tmp_path / "digits.edges").write_text("0 ²\n", encoding="utf-8")
        assert cli("deterministic", "--graph", "digits.edges") == (2, "")

    def test_graph_file_not_utf8_is_usage_error(self, cli: Cli, tmp_path: Path) -> None:
        (tmp_path / "binary.edges").write_bytes(b"\xff\xfe 0 1\n")
        assert cli("deterministic", "--graph", "binary.edges", "--a", "0", "--b", "1") == (1, "")

    def test_unreadable_graph_file_is_usage_error(self, cli: Cli, tmp_path: Path, mocker) -> None:
        (tmp_path / "locked.edges").write_text("0 1\n", encoding="utf-8")
        mocker.patch(
            "sheaf_communities.handlers.base_handler.load_graph_file",
            side_effect=PermissionError(13, "Permission denied"),
        )
        assert cli("deterministic", "--graph", "locked.edges", "--a", "0", "--b", "1") == (1, "")


class TestSweepCommand:
    """Test cases for the sweep command."""

    def test_csv_to_stdout(self, cli: Cli) -> None:
        code, output = cli("sweep", "--algo", "nonconstant", "--p-grid", "0,1", "--runs", "3")
        assert code == 0
        lines = output.split("\n")
        assert lines[0] == "p,num,numerr,qav,qaverr,aborts,pmax"
        assert lines[2] == "1.0,1.0,0.0,0.0,0.0,0,1.0"
        assert len(lines) == 4

    def test_deterministic_row(self, cli: Cli) -> None:
        code, output = cli("sweep", "--algo", "deterministic", "--ab-grid", "0.3:2.25")
        assert code == 0
        header, row = output.splitlines()
        assert header == "a,b,num,numerr,qav,qaverr,aborts,pmax"
        assert row.startswith("0.3,2.25,4.0,0.0,0.4069")
        assert row.endswith(",0,1.0")

    def test_out_file_is_reproducible(self, cli: Cli, tmp_path: Path) -> None:
        argv = ("sweep", "--algo", "nonconstant", "--p-grid", "0.1,0.2", "--runs", "5", "--seed", "11")
        assert cli(*argv, "--out", "first.csv") == (0, "")
        assert cli(*argv, "--out", "second.csv") == (0, "")
        assert (tmp_path / "first.csv").read_bytes() == (tmp_path / "second.csv").read_bytes()

    def test_workers_do_not_change_output(self, cli: Cli) -> None:
        argv = ("sweep", "--algo", "nonconstant", "--p-grid", "0.1,0.2", "--runs", "6", "--seed", "5")
        assert cli(*argv) == cli(*argv, "--workers", "2")

    @pytest.mark.parametrize(
        "argv",
        [
            ("sweep",),
            ("sweep", "--algo", "random"),
            ("sweep", "--algo", "nonconstant", "--d-grid", "1,2"),
            ("sweep", "--algo", "nonconstant", "--p-grid", "0.1,2"),
            ("sweep", "--algo", "deterministic", "--ab-grid", "0.3"),
            ("sweep", "--algo", "constant", "--phi-grid", "9"),
            ("sweep", "--algo", "constant", "--runs", "0"),
        ],
    )
    def test_usage_errors(self, cli: Cli, argv: tuple) -> None:
        assert cli(*argv) == (1, "")


class TestCompareCommand:
    """Test cases for the compare-eps command."""

    def test_consensus(self, cli: Cli) -> None:
        code, output = cli("compare-eps", "--d", "0.5", "--runs", "2")
        assert code == 0
        assert output == "eps 0.0033 vs 0.001: 2/2 converged pairs agree (rate 1.0000), 0 of 2 pairs aborted\n"

    def test_invalid_precise_eps(self, cli: Cli) -> None:
        assert cli("compare-eps", "--precise-eps", "2", "--runs", "1") == (1, "")


class TestApplication:
    """Test cases for application wiring."""

    def test_version(self, cli: Cli, capsys: pytest.CaptureFixture) -> None:
        code, _ = cli("--version")
        assert code == 0
        assert "0.1.0" in capsys.readouterr().out

    def test_help(self, cli: Cli) -> None:
        assert cli("--help")[0] == 0

    def test_configuration_summary_logged(self, cli: Cli, caplog: pytest.LogCaptureFixture) -> None:
        with caplog.at_level(logging.DEBUG, logger="sheaf_communities.main"):
            assert cli("cohomology", "--sheaf", "twisted")[0] == 0
        assert "eps: 0.0033" in caplog.text

    def test_every_command_is_dispatched(self) -> None:
        app = SheafCommunityApp(DynamicsConfig())
        subcommands = build_parser()._subparsers._group_actions[0].choices  # type: ignore[union-attr]
        assert set(app.commands()) == set(subcommands)

    def test_rejects_bad_config(self) -> None:
        with pytest.raises(TypeError):
            SheafCommunityApp({"eps": 0.1})  # type: ignore[arg-type]
        with pytest.raises(TypeError):
            DetectionHandlers(None)  # type: ignore[arg-type]


class TestBaseHandler:
    """Test cases for BaseHandler helpers."""

    @pytest.fixture
    def handler(self) -> BaseHandler:
        return BaseHandler(DynamicsConfig())

    def test_load_builtin_graph(self, handler: BaseHandler, karate: Graph) -> None:
        assert handler.load_graph("karate") == karate

    def test_missing_graph(self, handler: BaseHandler, tmp_path: Path) -> None:
        with pytest.raises(ValidationError) as exc_info:
            handler.load_graph(str(tmp_path / "missing.edges"))
        assert exc_info.value.field == "graph"

    def test_undecodable_graph(self, handler: BaseHandler, tmp_path: Path) -> None:
        path = tmp_path / "binary.edges"
        path.write_bytes(b"\xff\xfe 0 1\n")
        with pytest.raises(ValidationError) as exc_info:
            handler.load_graph(str(path))
        assert exc_info.value.field == "graph"
        assert isinstance(exc_info.value.__cause__, UnicodeDecodeError)

    def test_output_path_checks(self, handler: BaseHandler, tmp_path: Path) -> None:
        handler.check_output_path(None)
        handler.check_output_path(str(tmp_path / "ok.csv"))
        with pytest.raises(ValidationError):
            handler.check_output_path(str(tmp_path))
        with pytest.raises(ValidationError):
            handler.check_output_path(str(tmp_path / "missing" / "x.csv"))

    def test_get_handler_name(self, handler: BaseHandler) -> None:
        assert handler.get_handler_name() == "BaseHandler"
        assert DetectionHandlers(DynamicsConfig()).get_handler_name() == "DetectionHandlers"
