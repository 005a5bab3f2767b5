"""Tests for the examples command."""

import json

import pytest

from tropfan.commands.examples_cmd import ExamplesCommand
from tropfan.exceptions import ExampleNotFoundError


class TestExamplesCommand:
    """Test class for ExamplesCommand functionality."""

    def test_list(self, config_manager, capsys):
        command = ExamplesCommand(config_manager)
        assert command.run() is None
        command.show(None)
        out = capsys.readouterr().out
        assert "lambda2" in out
        assert "mod-lambda-cross" in out

    def test_emit(self, config_manager, capsys):
        command = ExamplesCommand(config_manager)
        command.show(command.run("bergman-u(2,3)"))
        data = json.loads(capsys.readouterr().out)
        assert data["ambient_rank"] == 2
        assert len(data["rays"]) == 3

    def test_unknown(self, config_manager):
        with pytest.raises(ExampleNotFoundError):
            ExamplesCommand(config_manager).run("lambda9")
