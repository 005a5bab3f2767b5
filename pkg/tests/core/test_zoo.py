"""Tests for the built-in example fans."""

import pytest

from tropfan.core.fanio import summarize
from tropfan.core.zoo import EXAMPLES, example, example_names, load_example, load_source
from tropfan.exceptions import ExampleNotFoundError, FanFileError


class TestExamples:
    """Test class for the fixed examples."""

    def test_names(self):
        names = example_names()
        assert "lambda2" in names
        assert "bergman-u(r,n)" in names
        assert "product:A×B" in names

    @pytest.mark.parametrize("name", sorted(EXAMPLES))
    def test_examples_are_balanced(self, name):
        """Every built-in example validates and balances."""
        data = load_example(name)
        summary = summarize(data.fan, data.weights)
        assert summary.balanced in (True, None)
        assert summary.pure

    def test_point(self):
        data = load_example("point")
        assert data.fan.ambient_rank == 1
        assert data.fan.dim == 0
        assert data.weights is None

    def test_plane_fan_function(self, lambda2):
        """min(0, x) + min(0, y) on the rays e1, -e1, e2, -e2."""
        assert lambda2.function.ray_values() == [0, -1, 0, -1]

    def test_modification_example(self):
        data = load_example("mod-lambda-cross")
        assert data.fan.ambient_rank == 3
        assert data.fan.dim == 2
        assert len(data.fan.rays) == 5
        assert data.function is not None

    def test_modification_carries_base_function(self):
        """min(0, x) + min(0, y) pulled back: -1 over -e1 and -e2, 0 elsewhere."""
        data = load_example("mod-lambda-cross")
        values = dict(zip(map(tuple, data.fan.rays), data.function.ray_values()))
        assert values == {
            (1, 0, 0): 0,
            (-1, 0, -1): -1,
            (0, 1, 0): 0,
            (0, -1, -1): -1,
            (0, 0, 1): 0,
        }

    def test_unknown(self):
        with pytest.raises(ExampleNotFoundError, match="Unknown example 'square'"):
            example("square")


class TestFamilies:
    """Test class for Bergman fans and products."""

    def test_bergman_line(self):
        """U(2,3) gives the tropical line in the plane."""
        data = load_example("bergman-u(2,3)")
        assert data.fan.ambient_rank == 2
        assert data.fan.cone_counts() == (1, 3)

    def test_bergman_plane(self):
        """U(3,4): ten proper flats and twelve flags."""
        data = load_example("bergman-u(3, 4)")
        assert data.fan.cone_counts() == (1, 10, 12)
        assert summarize(data.fan, data.weights).balanced

    def test_bergman_rank_one(self):
        """Without proper flats the fan is the origin."""
        data = load_example("bergman-u(1,3)")
        assert data.fan.dim == 0
        assert data.fan.ambient_rank == 2

    @pytest.mark.parametrize("name", ["bergman-u(4,3)", "bergman-u(2,7)", "bergman-u(0,2)"])
    def test_bergman_out_of_range(self, name):
        with pytest.raises(ExampleNotFoundError, match="bergman-u"):
            example(name)

    @pytest.mark.parametrize("name", ["product:line1×cross", "product:line1*cross"])
    def test_products(self, name):
        data = load_example(name)
        assert data.fan.ambient_rank == 3
        assert data.fan.dim == 2
        assert data.fan.product_of is not None
        assert data.fan.cone_counts() == (1, 6, 8)

    def test_product_needs_two_names(self):
        with pytest.raises(ExampleNotFoundError, match="product:A×B"):
            example("product:line1")


class TestLoadSource:
    """Test class for resolving a path or an example name."""

    def test_existing_file(self, unbalanced_cross, write_fan):
        path = write_fan(unbalanced_cross, "lambda2")
        data = load_source(str(path))
        assert data.fan.dim == 1

    def test_example_name(self):
        assert load_source("lambda2").fan.dim == 2

    def test_missing_path(self, temp_dir):
        with pytest.raises(FanFileError, match="No such fan file"):
            load_source(str(temp_dir / "fan.json"))
        with pytest.raises(FanFileError, match="No such fan file"):
            load_source("missing.json")

    def test_unknown_name(self):
        with pytest.raises(ExampleNotFoundError):
            load_source("lambda3")
