"""Tests for the homology command."""

import json

import pytest

from tropfan.commands.homology_cmd import HomologyCommand, parse_degree
from tropfan.exceptions import ComplexError
from tropfan.models import CheckReport, HomologyTable, TropfanSettings


class TestHomologyCommand:
    """Test class for HomologyCommand functionality."""

    def test_parse_degree(self):
        assert parse_degree("all") is None
        assert parse_degree("2") == 2
        with pytest.raises(ComplexError, match="takes 'all' or an integer"):
            parse_degree("two")

    def test_borel_moore(self, config_manager):
        table = HomologyCommand(config_manager).run("cross", theory="bm")
        assert isinstance(table, HomologyTable)
        assert table.theory == "borel_moore"
        assert table.dims == [[0, 3], [0, 2]]

    def test_default_is_ordinary(self, config_manager):
        table = HomologyCommand(config_manager).run("lambda2")
        assert table.dims == [[1, 0, 0], [2, 0, 0], [1, 0, 0]]

    def test_single_degree(self, config_manager):
        table = HomologyCommand(config_manager).run("lambda2", theory="compact", p="1")
        assert table.p == 1
        assert table.dims == [[0, 0, 2]]

    def test_compactification(self, config_manager):
        """The compactified plane fan is P^1 × P^1."""
        table = HomologyCommand(config_manager).run(
            "lambda2", theory="cohomology", space="compactification"
        )
        assert table.dims == [[1, 0, 0], [0, 2, 0], [0, 0, 1]]

    def test_open_strata(self, config_manager):
        table = HomologyCommand(config_manager).run("lambda2", theory="bm", space="open:0")
        assert table.dims == [[0, 0, 1], [0, 0, 2], [0, 0, 1]]

    @pytest.mark.parametrize(
        "space,message", [("open:a", "comma-separated"), ("sphere", "Unknown space")]
    )
    def test_bad_space(self, config_manager, space, message):
        with pytest.raises(ComplexError, match=message):
            HomologyCommand(config_manager).run("lambda2", space=space)

    def test_unknown_theory(self, config_manager):
        with pytest.raises(ComplexError, match="Unknown theory 'singular'"):
            HomologyCommand(config_manager).run("lambda2", theory="singular")

    def test_kunneth(self, config_manager):
        report = HomologyCommand(config_manager).run("line1", kunneth_with="cross")
        assert isinstance(report, CheckReport)
        assert report.passed

    def test_duality(self, config_manager):
        report = HomologyCommand(config_manager).run("lambda2", duality=True)
        assert isinstance(report, CheckReport)
        assert report.passed

    def test_representatives_from_settings(self, config_manager):
        config_manager.save_config(TropfanSettings(keep_representatives=True))
        table = HomologyCommand(config_manager).run("cross", theory="bm")
        assert len(table.representatives["0,1"]) == 3

    def test_show_json(self, config_manager, capsys):
        command = HomologyCommand(config_manager)
        command.show(command.run("tropline3", theory="bm"), "json")
        data = json.loads(capsys.readouterr().out)
        assert data["dims"] == [[0, 3], [0, 1]]

    def test_show_text(self, config_manager, capsys):
        command = HomologyCommand(config_manager)
        command.show(command.run("cross", theory="bm", p="0"), "text")
        assert "H^BM_{p,q} on fan, p = 0: [0, 3]" in capsys.readouterr().out
