"""Tests for the star, product, divisor and modify commands."""

import json

import pytest

from tropfan.commands.construct_cmd import ConstructCommand, parse_cone
from tropfan.exceptions import FanValidationError, FunctionError


class TestParseCone:
    def test_ray_ids(self):
        assert parse_cone("0,2") == [0, 2]
        assert parse_cone(" 1 , 3 ") == [1, 3]

    def test_zero_cone(self):
        assert parse_cone("") == []

    def test_not_numbers(self):
        with pytest.raises(FanValidationError, match="not a list of ray ids"):
            parse_cone("a,b")


class TestConstructCommand:
    """Test class for ConstructCommand functionality."""

    def test_star_at_ray(self, config_manager):
        """The star of Λ at a ray is a line."""
        report = ConstructCommand(config_manager).star("lambda2", "0")
        assert report.cone == [0]
        assert report.summary.ambient_rank == 1
        assert report.summary.cone_counts == [1, 2]
        assert report.summary.balanced

    def test_star_at_origin(self, config_manager):
        report = ConstructCommand(config_manager).star("cross", "")
        assert report.summary.cone_counts == [1, 4]

    def test_star_not_a_cone(self, config_manager):
        with pytest.raises(FanValidationError, match="is not a cone"):
            ConstructCommand(config_manager).star("lambda2", "0,1")

    def test_product(self, config_manager):
        ff = ConstructCommand(config_manager).product("line1", "line1")
        assert ff.ambient_rank == 2
        assert ff.product_of is not None

    def test_divisor(self, config_manager):
        """min(0, x) + min(0, y) bends along all four rays."""
        report = ConstructCommand(config_manager).divisor("lambda2")
        assert not report.empty
        assert len(report.orders) == 4
        assert report.support.cone_counts == [1, 4]

    def test_divisor_needs_function(self, config_manager):
        with pytest.raises(FunctionError, match="carries no function"):
            ConstructCommand(config_manager).divisor("cube-skeleton")

    def test_modify(self, config_manager):
        report = ConstructCommand(config_manager).modify("lambda2")
        assert report.total.ambient_rank == 3
        assert report.total.rays == 5
        assert report.graph_faces + report.up_faces == sum(report.total.cone_counts)
        assert report.balanced

    def test_show_modification_json(self, config_manager, capsys):
        command = ConstructCommand(config_manager)
        command.show_modification(command.modify("lambda2"), "json")
        data = json.loads(capsys.readouterr().out)
        assert data["balanced"] is True
        assert data["fan"]["ambient_rank"] == 3
