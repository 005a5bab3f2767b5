"""Tests for orientations, functions, divisors and modifications."""

import pytest

from tropfan.core.fan import product, star_fan, validate
from tropfan.core.weights import (
    Orientation,
    PLFunction,
    check_balancing,
    divisor,
    factor_pullback,
    induced_function,
    order_of_vanishing,
    product_orientation,
    pullback_function,
    tropical_modification,
)
from tropfan.exceptions import FanValidationError, FunctionError


class TestOrientation:
    """Test class for weights and balancing."""

    def test_constant_weights_balance(self, lambda2, cube, tropline):
        """The zoo fans are balanced with weight 1."""
        for data in (lambda2, cube, tropline):
            report = check_balancing(data.fan, Orientation.constant(data.fan))
            assert report.balanced
            assert report.violations == []

    def test_unbalanced_cross(self, cross):
        """Weight 2 on -e2 leaves the residual -e2 at the origin."""
        fan = cross.fan
        w = Orientation.from_rays(fan, {(0,): 1, (1,): 1, (2,): 1, (3,): 2})
        report = check_balancing(fan, w)
        assert not report.balanced
        assert len(report.violations) == 1
        assert report.violations[0].cone == []
        assert report.violations[0].residual == [0, -1]

    def test_zero_weight(self, cross):
        """Weights must be nonzero."""
        fan = cross.fan
        with pytest.raises(FanValidationError, match="zero"):
            Orientation.from_rays(fan, {(0,): 1, (1,): 1, (2,): 1, (3,): 0})

    def test_weights_only_on_facets(self, lambda2):
        """Every facet needs a weight and nothing else gets one."""
        fan = lambda2.fan
        with pytest.raises(FanValidationError, match="exactly on facets"):
            Orientation(fan, {fan.cone_id((0, 2)): 1})

    def test_impure_fan(self):
        """Orientations live on pure fans."""
        fan = validate(2, [[1, 0], [0, 1], [-1, -1]], [[0, 1]])
        assert not fan.is_pure
        with pytest.raises(FanValidationError, match="pure"):
            Orientation.constant(fan)


class TestPLFunction:
    """Test class for conewise linear functions."""

    def test_from_ray_values(self, lambda2):
        """min(0, x) + min(0, y) is determined by its ray values."""
        fn = lambda2.function
        assert fn.ray_values() == [0, -1, 0, -1]
        assert not fn.is_linear()
        assert fn.forms[lambda2.fan.cone_id((1, 3))] == (1, 1)

    def test_linear(self, lambda2):
        fn = PLFunction.linear(lambda2.fan, (1, 2))
        assert fn.is_linear()
        assert fn.ray_values() == [1, -1, 2, -2]

    def test_incompatible_forms(self, lambda2):
        """Forms that disagree on a shared ray are rejected."""
        fan = lambda2.fan
        forms = {
            fan.cone_id((0, 2)): (0, 0),
            fan.cone_id((0, 3)): (1, 0),
            fan.cone_id((1, 2)): (0, 0),
            fan.cone_id((1, 3)): (0, 0),
        }
        with pytest.raises(FunctionError, match="disagree"):
            PLFunction(fan, forms)

    def test_missing_form(self, lambda2):
        """Every facet needs a form."""
        with pytest.raises(FunctionError, match="one form per facet"):
            PLFunction(lambda2.fan, {lambda2.fan.cone_id((0, 2)): (0, 0)})

    def test_non_integral_values(self):
        """Ray values must come from integral forms."""
        fan = validate(2, [[1, 0], [1, 2]], [[0, 1]])
        with pytest.raises(FunctionError, match="integral"):
            PLFunction.from_ray_values(fan, [0, 1])

    def test_ray_value_count(self, lambda2):
        with pytest.raises(FunctionError, match="ray values"):
            PLFunction.from_ray_values(lambda2.fan, [0, 1])

    def test_add_linear(self, lambda2):
        """Adding a linear form shifts every ray value by its pairing."""
        shifted = lambda2.function.add_linear((1, 0))
        assert shifted.ray_values() == [1, -2, 0, -1]


class TestDivisor:
    """Test class for orders of vanishing and divisors."""

    def test_divisor_of_min_function(self, lambda2):
        """div(min(0, x) + min(0, y)) on the plane fan is the cross with weights 1."""
        fan = lambda2.fan
        div = divisor(fan, lambda2.weights_or_default(), lambda2.function)
        assert not div.is_empty
        assert div.support.cone_counts() == (1, 4)
        assert sorted(div.support.rays) == sorted(tuple(r) for r in fan.rays)
        assert sorted(div.weights.weights.values()) == [1, 1, 1, 1]
        assert all(order == 1 for order in div.orders.values())

    def test_divisor_of_linear_function(self, lambda2):
        """Linear functions have empty divisors."""
        fn = PLFunction.linear(lambda2.fan, (3, -1))
        div = divisor(lambda2.fan, lambda2.weights_or_default(), fn)
        assert div.is_empty
        assert div.support is None

    def test_cross_function_vanishes(self, cross):
        """g = max(0, x) - max(0, y) has order 0 at the origin of the cross."""
        fan = cross.fan
        order = order_of_vanishing(fan, cross.weights_or_default(), cross.function, fan.zero)
        assert order == 0
        assert divisor(fan, cross.weights_or_default(), cross.function).is_empty

    def test_order_needs_codimension_one(self, lambda2):
        with pytest.raises(FunctionError, match="codimension one"):
            order_of_vanishing(
                lambda2.fan, lambda2.weights_or_default(), lambda2.function, 0
            )


class TestModification:
    """Test class for tropical modifications."""

    def test_modification_along_cross(self, lambda2):
        """TM_f(Λ) has 4 graph rays plus the special ray and 8 facets."""
        mod = tropical_modification(
            lambda2.fan, lambda2.weights_or_default(), lambda2.function
        )
        assert mod.total.ambient_rank == 3
        assert len(mod.total.rays) == 5
        assert len(mod.total.facets) == 8
        assert mod.special_ray == 4
        assert mod.total.rays[4] == (0, 0, 1)
        assert check_balancing(mod.total, mod.weights).balanced
        kinds = [kind for kind, _ in mod.face_map.values()]
        assert kinds.count("up") == 5

    def test_star_at_special_ray_is_cross(self, lambda2):
        """The star of the modification at the special ray is the divisor."""
        mod = tropical_modification(
            lambda2.fan, lambda2.weights_or_default(), lambda2.function
        )
        data = star_fan(mod.total, mod.total.cone_id((mod.special_ray,)))
        assert data.star.ambient_rank == 2
        assert data.star.cone_counts() == (1, 4)

    def test_degenerate_modification(self, lambda2):
        """A linear function gives the graph of the fan and no special ray."""
        fn = PLFunction.linear(lambda2.fan, (1, 1))
        mod = tropical_modification(lambda2.fan, lambda2.weights_or_default(), fn)
        assert mod.special_ray is None
        assert mod.total.cone_counts() == (1, 4, 4)
        with pytest.raises(KeyError):
            mod.up_cone(0)

    def test_cross_along_empty_divisor(self, cross):
        """Modifying the cross along g gives a one-dimensional fan in rank 3."""
        mod = tropical_modification(
            cross.fan, cross.weights_or_default(), cross.function
        )
        assert mod.special_ray is None
        assert mod.total.ambient_rank == 3
        assert mod.total.cone_counts() == (1, 4)

    def test_pullback_function(self, lambda2, cross):
        """g pulled back to TM_f(Λ) has a divisor avoiding the special ray."""
        mod = tropical_modification(
            lambda2.fan, lambda2.weights_or_default(), lambda2.function
        )
        g = PLFunction.from_ray_values(lambda2.fan, cross.function.ray_values())
        pulled = pullback_function(mod, g)
        assert pulled.ray_values() == [1, 0, -1, 0, 0]
        div = divisor(mod.total, mod.weights, pulled)
        assert not div.is_empty
        assert (0, 0, 1) not in div.support.rays


class TestInducedAndProducts:
    """Test class for induced functions and product orientations."""

    def test_induced_function_on_star(self, lambda2):
        """f induces a function on the star at a ray with a nonzero divisor."""
        fan = lambda2.fan
        data, fn = induced_function(fan, lambda2.function, fan.cone_id((0,)))
        assert data.star.ambient_rank == 1
        assert not fn.is_linear()

    def test_induced_function_bad_cone(self, lambda2):
        with pytest.raises(FunctionError, match="not a cone id"):
            induced_function(lambda2.fan, lambda2.function, 99)

    def test_product_orientation(self, line1, cross):
        """Product weights multiply the factor weights."""
        fan = product(line1.fan, cross.fan)
        w2 = Orientation.constant(cross.fan, 3)
        w = product_orientation(fan, Orientation.constant(line1.fan), w2)
        assert set(w.weights.values()) == {3}

    def test_factor_pullback(self, line1, cross):
        """A function on one factor pulls back along the projection."""
        fan = product(line1.fan, cross.fan)
        pulled = factor_pullback(fan, cross.function, factor=1)
        assert pulled.ray_values() == [0, 0, 1, 0, -1, 0]
