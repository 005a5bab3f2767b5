"""Tests for fan validation, star fans and products."""

import pytest

from tropfan.core.fan import (
    is_unimodular,
    multiplicity,
    permute_rays,
    product,
    product_cone,
    star_fan,
    validate,
)
from tropfan.exceptions import FanValidationError, GuardrailError

PLANE_RAYS = [[1, 0], [-1, 0], [0, 1], [0, -1]]
SQUARE_RAYS = [[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]]
SQUARE_EDGES = [[0, 1], [1, 2], [2, 3], [0, 3]]


class TestValidate:
    """Test class for fan validation."""

    def test_complete_plane_fan(self, lambda2):
        """The complete fan of the plane is pure, simplicial and unimodular."""
        fan = lambda2.fan
        assert fan.dim == 2
        assert fan.cone_counts() == (1, 4, 4)
        assert fan.is_pure
        assert fan.is_simplicial
        assert is_unimodular(fan)

    def test_cube_skeleton(self, cube):
        """The cube skeleton has 8 rays and 12 two-dimensional cones."""
        assert cube.fan.ambient_rank == 3
        assert cube.fan.cone_counts() == (1, 8, 12)

    def test_zero_cone_first(self, lambda2):
        """Cone ids are sorted by dimension, so the zero cone has id 0."""
        fan = lambda2.fan
        assert fan.zero == 0
        assert fan.cones[0].rays == ()
        assert fan.cone_id((0,)) == 1
        assert fan.cone_id((2, 0)) == fan.cone_id((0, 2))

    def test_faces_are_inserted(self):
        """Faces of simplicial cones need not be declared."""
        fan = validate(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[0, 1, 2]])
        assert fan.cone_counts() == (1, 3, 3, 1)

    def test_non_primitive_ray(self, caplog):
        """Non-primitive rays are replaced by their primitive generator."""
        fan = validate(1, [[2]], [])
        assert fan.rays == ((1,),)
        assert "not primitive" in caplog.text

    def test_wrong_ray_length(self):
        """Rays must live in the ambient lattice."""
        with pytest.raises(FanValidationError, match="length"):
            validate(2, [[1, 0, 0]], [])

    def test_zero_ray(self):
        """The zero vector is not a ray."""
        with pytest.raises(FanValidationError, match="zero vector"):
            validate(2, [[0, 0]], [])

    def test_duplicate_ray(self):
        """Rays with the same primitive generator are duplicates."""
        with pytest.raises(FanValidationError, match="duplicates"):
            validate(2, [[1, 0], [3, 0]], [])

    def test_duplicate_cone(self):
        """A cone may be declared once."""
        with pytest.raises(FanValidationError, match="Duplicate cone"):
            validate(2, PLANE_RAYS, [[0, 2], [2, 0]])

    def test_unknown_ray(self):
        """Cones refer to existing rays only."""
        with pytest.raises(FanValidationError, match="unknown ray"):
            validate(2, PLANE_RAYS, [[0, 7]])

    def test_cone_with_line(self):
        """Opposite rays do not span a cone."""
        with pytest.raises(FanValidationError, match="contains a line"):
            validate(1, [[1], [-1]], [[0, 1]])

    def test_missing_facets(self):
        """A non-simplicial cone must come with its facets."""
        with pytest.raises(FanValidationError, match="Face-closure violation"):
            validate(3, SQUARE_RAYS, [[0, 1, 2, 3]])

    def test_non_simplicial_cone(self):
        """A square cone with declared edges is a valid non-simplicial fan."""
        fan = validate(3, SQUARE_RAYS, [[0, 1, 2, 3]] + SQUARE_EDGES)
        assert fan.dim == 3
        assert not fan.is_simplicial

    def test_rank_guardrail(self):
        """Ambient ranks above the limit are refused."""
        with pytest.raises(GuardrailError, match="exceeds"):
            validate(5, [], [], max_ambient_rank=4)

    def test_point(self):
        """A fan without rays is the zero cone only."""
        fan = validate(1, [], [])
        assert fan.dim == 0
        assert fan.cone_counts() == (1,)
        assert fan.facets == (0,)


class TestPoset:
    """Test class for faces, cofaces and meets."""

    def test_faces_and_cofaces(self, lambda2):
        """A ray lies in two facets of the plane fan."""
        fan = lambda2.fan
        ray = fan.cone_id((0,))
        facets = [c for c in fan.cofaces(ray) if fan.cones[c].dim == 2]
        assert sorted(fan.cones[c].rays for c in facets) == [(0, 2), (0, 3)]
        assert fan.faces(fan.cone_id((0, 2))) == (0, ray, fan.cone_id((2,)), fan.cone_id((0, 2)))

    def test_meet(self, lambda2):
        """Two quadrants meet in a ray or in the origin."""
        fan = lambda2.fan
        a, b, c = fan.cone_id((0, 2)), fan.cone_id((0, 3)), fan.cone_id((1, 3))
        assert fan.meet(a, b) == fan.cone_id((0,))
        assert fan.meet(a, c) == fan.zero

    def test_covers(self, lambda2):
        """Covers of the plane fan: four at the origin and two per quadrant."""
        assert len(lambda2.fan.covers) == 4 + 8

    def test_unknown_cone(self, lambda2):
        with pytest.raises(KeyError):
            lambda2.fan.cone_id((0, 1))


class TestStarFan:
    """Test class for star fans."""

    def test_star_at_ray_of_plane(self, lambda2):
        """The star of the plane fan at a ray is a line."""
        data = star_fan(lambda2.fan, lambda2.fan.cone_id((0,)))
        assert data.star.ambient_rank == 1
        assert data.star.cone_counts() == (1, 2)

    def test_star_at_ray_of_cube(self, cube):
        """The cube skeleton at a vertex ray looks like three rays in the plane."""
        data = star_fan(cube.fan, cube.fan.cone_id((0,)))
        assert data.star.ambient_rank == 2
        assert data.star.cone_counts() == (1, 3)

    def test_star_at_zero_cone(self, cube):
        """The star at the origin is the fan itself."""
        data = star_fan(cube.fan, cube.fan.zero)
        assert data.star.cone_counts() == cube.fan.cone_counts()

    def test_star_at_facet(self, lambda2):
        """The star at a maximal cone is a point."""
        data = star_fan(lambda2.fan, lambda2.fan.cone_id((0, 2)))
        assert data.star.ambient_rank == 0
        assert data.star.dim == 0

    def test_star_weights(self, cube):
        """Facet weights are carried to the star."""
        weights = cube.weights_or_default().by_rays()
        data = star_fan(cube.fan, cube.fan.cone_id((0,)), weights)
        assert data.weights is not None
        assert sorted(data.weights.values()) == [1, 1, 1]


class TestProduct:
    """Test class for product fans."""

    def test_line_times_line(self, line1):
        """line1 × line1 is the complete fan of the plane."""
        fan = product(line1.fan, line1.fan)
        assert fan.ambient_rank == 2
        assert fan.cone_counts() == (1, 4, 4)
        assert fan.product_of is not None

    def test_line_times_cross(self, line1, cross):
        """line1 × cross has 2 + 4 rays and 8 facets."""
        fan = product(line1.fan, cross.fan)
        assert fan.ambient_rank == 3
        assert len(fan.rays) == 6
        assert len(fan.facets) == 8

    def test_product_cone(self, line1):
        fan = product(line1.fan, line1.fan)
        cone = product_cone(fan, line1.fan.cone_id((0,)), line1.fan.cone_id((1,)))
        assert fan.cones[cone].rays == (0, 3)

    def test_star_of_product(self, line1, cross):
        """Stars of products are products of stars."""
        fan = product(line1.fan, cross.fan)
        data = star_fan(fan, fan.cone_id((0,)))
        assert data.star.ambient_rank == 2
        assert data.star.cone_counts() == (1, 4)


class TestLatticeInvariants:
    """Test class for multiplicities and relabelling."""

    def test_multiplicity(self):
        """The cone spanned by (1, 0) and (1, 2) has multiplicity 2."""
        fan = validate(2, [[1, 0], [1, 2]], [[0, 1]])
        assert multiplicity(fan, fan.cone_id((0, 1))) == 2
        assert not is_unimodular(fan)

    def test_permute_rays(self, lambda2):
        """Relabelling rays keeps the combinatorics."""
        fan = permute_rays(lambda2.fan, [1, 0, 3, 2])
        assert fan.rays[0] == (-1, 0)
        assert fan.cone_counts() == (1, 4, 4)
        assert fan.has_cone((1, 3))
