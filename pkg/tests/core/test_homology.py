"""Tests for tropical (co)homology, duality and modification checks."""

import pytest

from tropfan.core.compact import compactify, open_subcomplex
from tropfan.core.homology import (
    THEORIES,
    build_complex,
    cap_degree0,
    compactification_duality,
    fundamental_cycle,
    homology_dims,
    identity_map,
    kunneth_check,
    mapping_cone,
    modification_smoothness,
    pd_check,
    relative_complex,
    smooth_check,
    subfan_of,
    verify_tm_coefficients,
    verify_tm_homology,
)
from tropfan.core.weights import Orientation, PLFunction, tropical_modification
from tropfan.core.zoo import load_example
from tropfan.exceptions import ComplexError, SubfanError

CUBE_COMPACT = [[0, 0, 5], [0, 0, 3], [0, 2, 1]]
CUBE_CLOSURE = [[1, 0, 0], [0, 5, 0], [0, 2, 1]]
ZOO = [
    "point",
    "line1",
    "lambda2",
    "cross",
    "tropline3",
    "bergman-u(2,3)",
    "bergman-u(2,4)",
    pytest.param("cube-skeleton", marks=pytest.mark.slow),
    pytest.param("mod-lambda-cross", marks=pytest.mark.slow),
    pytest.param("bergman-u(3,4)", marks=pytest.mark.slow),
    pytest.param("product:line1×cross", marks=pytest.mark.slow),
]


class TestComplexes:
    """Test class for complex assembly."""

    @pytest.mark.parametrize("theory", THEORIES)
    @pytest.mark.parametrize("name", ["lambda2", "cross", "tropline3", "mod-lambda-cross"])
    def test_boundary_squares_to_zero(self, name, theory):
        """Every theory gives a complex in every coefficient degree."""
        data = load_example(name)
        for p in range(data.fan.dim + 1):
            assert build_complex(data.fan, theory, p).is_complex()

    def test_corrupted_sign(self, lambda2):
        """Flipping one sign of the compactification breaks ∂² = 0."""
        fan = lambda2.fan
        c = compactify(fan)
        bad = c.with_flipped_sign(c.face(0, 0), c.face(0, fan.cone_id((0,))))
        with pytest.raises(ComplexError, match="square to zero"):
            build_complex(bad, "ordinary", 0)
        assert not build_complex(bad, "ordinary", 0, check=False).is_complex()

    def test_reoriented_face_keeps_homology(self, lambda2):
        """Reorienting a cell changes a basis, not the homology."""
        fan = lambda2.fan
        c = compactify(fan)
        other = c.reoriented(c.face(0, fan.cone_id((0, 2))))
        assert homology_dims(other, "ordinary").dims == homology_dims(c, "ordinary").dims

    def test_unknown_theory(self, lambda2):
        with pytest.raises(ComplexError, match="Unknown theory"):
            build_complex(lambda2.fan, "singular", 0)

    def test_open_strata_theories(self, lambda2):
        """Open unions of strata only carry Borel-Moore and compact support."""
        subset = open_subcomplex(compactify(lambda2.fan), [0])
        with pytest.raises(ComplexError, match="open strata"):
            homology_dims(subset, "ordinary")


class TestHomologyTables:
    """Test class for homology dimension tables."""

    def test_plane_fan_borel_moore(self, lambda2):
        """H^BM of the plane fan sits in top degree with dims (1, 2, 1)."""
        table = homology_dims(lambda2.fan, "borel_moore")
        assert table.dims == [[0, 0, 1], [0, 0, 2], [0, 0, 1]]
        assert table.theory == "borel_moore"
        assert table.space == "fan"

    def test_ordinary_homology_of_fan(self, lambda2):
        """A fan retracts to its origin."""
        table = homology_dims(lambda2.fan, "ordinary")
        assert table.dims == [[1, 0, 0], [2, 0, 0], [1, 0, 0]]

    def test_cross(self, cross):
        assert homology_dims(cross.fan, "borel_moore").dims == [[0, 3], [0, 2]]

    def test_tropical_line(self, tropline):
        assert homology_dims(tropline.fan, "borel_moore").dims == [[0, 3], [0, 1]]

    def test_single_degree(self, lambda2):
        table = homology_dims(lambda2.fan, "borel_moore", p=1)
        assert table.p == 1
        assert table.dims == [[0, 0, 2]]

    def test_degree_out_of_range(self, lambda2):
        with pytest.raises(ComplexError, match="outside"):
            homology_dims(lambda2.fan, "borel_moore", p=3)

    def test_threads_do_not_change_results(self, lambda2):
        one = homology_dims(compactify(lambda2.fan), "cohomology")
        many = homology_dims(compactify(lambda2.fan), "cohomology", threads=3)
        assert one == many

    def test_representatives(self, cross):
        """Representatives are kept only on request, one column per class."""
        table = homology_dims(cross.fan, "borel_moore", keep_representatives=True)
        assert len(table.representatives["0,1"]) == 3
        assert table.representatives.get("0,0") is None
        assert homology_dims(cross.fan, "borel_moore").representatives is None

    def test_cube_compact_support(self, cube):
        """H_c of the cube skeleton."""
        assert homology_dims(cube.fan, "compact_support").dims == CUBE_COMPACT
        assert homology_dims(cube.fan, "borel_moore").dims == CUBE_COMPACT

    @pytest.mark.slow
    def test_cube_compactification(self, cube):
        """Cohomology and homology of the compactified cube skeleton."""
        c = compactify(cube.fan)
        assert homology_dims(c, "cohomology").dims == CUBE_CLOSURE
        assert homology_dims(c, "ordinary").dims == CUBE_CLOSURE

    def test_modification_has_extra_homology(self, lambda2):
        """TM_f(Λ) has H^BM_{0,2} = 4, while F^2(0) is only 3-dimensional."""
        mod = tropical_modification(
            lambda2.fan, lambda2.weights_or_default(), lambda2.function
        )
        assert homology_dims(mod.total, "borel_moore").dims[0][2] == 4
        cap = cap_degree0(mod.total, mod.weights, 2).rank
        assert cap.source_dim == 3
        assert not cap.surjective

    def test_semi_open_modification(self, lambda2):
        """Adding the stratum of the special ray recovers H^BM of the base."""
        mod = tropical_modification(
            lambda2.fan, lambda2.weights_or_default(), lambda2.function
        )
        ray = mod.total.cone_id((mod.special_ray,))
        subset = open_subcomplex(compactify(mod.total), [0, ray])
        table = homology_dims(subset, "borel_moore")
        assert table.dims == homology_dims(lambda2.fan, "borel_moore").dims
        assert table.space == f"open:0,{ray}"


class TestZooProperties:
    """Test class for identities every example satisfies."""

    @pytest.mark.parametrize("name", ZOO)
    def test_boundaries_square_to_zero(self, name):
        fan = load_example(name).fan
        for theory in THEORIES:
            for p in range(fan.dim + 1):
                assert build_complex(fan, theory, p).is_complex(), (theory, p)

    @pytest.mark.parametrize("name", ZOO)
    def test_compact_support_matches_borel_moore(self, name):
        """dim H_c^{p,q} = dim H^BM_{p,q}."""
        fan = load_example(name).fan
        compact = homology_dims(fan, "compact_support").dims
        assert compact == homology_dims(fan, "borel_moore").dims

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ZOO)
    def test_compactification_borel_moore_is_ordinary(self, name):
        """On the compact space Σ̄ the two homologies coincide."""
        c = compactify(load_example(name).fan)
        assert homology_dims(c, "borel_moore").dims == homology_dims(c, "ordinary").dims

    @pytest.mark.parametrize("name", ZOO)
    def test_reports_are_byte_identical(self, name):
        """Two runs from fresh fans serialize to the same JSON."""

        def report() -> str:
            data = load_example(name)
            table = homology_dims(data.fan, "borel_moore", keep_representatives=True)
            pd = pd_check(data.fan, data.weights_or_default())
            return table.model_dump_json() + pd.model_dump_json()

        assert report() == report()


class TestDuality:
    """Test class for fundamental classes and Poincaré duality."""

    def test_fundamental_cycle(self, lambda2):
        assert fundamental_cycle(lambda2.fan, lambda2.weights_or_default()).closed

    def test_unbalanced_fundamental_cycle(self, cross):
        """Unbalanced weights leave a boundary."""
        fan = cross.fan
        w = Orientation.from_rays(fan, {(0,): 1, (1,): 1, (2,): 1, (3,): 2})
        assert not fundamental_cycle(fan, w).closed

    def test_pd_plane_fan(self, lambda2):
        report = pd_check(lambda2.fan, lambda2.weights_or_default())
        assert report.passed
        assert report.vanishing
        assert all(cap.injective and cap.surjective for cap in report.cap)

    def test_pd_tropical_line(self, tropline):
        assert pd_check(tropline.fan, tropline.weights_or_default()).passed

    def test_pd_cross(self, cross):
        """The cross has H^BM_{1,1} of dimension 2 but F^0(0) of dimension 1."""
        report = pd_check(cross.fan, cross.weights_or_default())
        assert not report.passed
        assert not report.cap[0].surjective

    def test_pd_cube(self, cube):
        report = pd_check(cube.fan, cube.weights_or_default())
        assert not report.passed
        assert [2, 1] in report.nonvanishing

    def test_smooth_plane_fan(self, lambda2):
        """The plane fan is smooth under both criteria."""
        w = lambda2.weights_or_default()
        assert smooth_check(lambda2.fan, w, "local").passed
        assert smooth_check(lambda2.fan, w, "aksnes").passed

    def test_smooth_cross(self, cross):
        report = smooth_check(cross.fan, cross.weights_or_default())
        assert not report.passed
        assert [] in [v.cone for v in report.stars if not v.passed]

    def test_unknown_criterion(self, lambda2):
        with pytest.raises(ComplexError, match="criterion"):
            smooth_check(lambda2.fan, lambda2.weights_or_default(), "strict")

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "name,smooth",
        [
            ("lambda2", True),
            ("tropline3", True),
            ("line1", True),
            ("cross", False),
            ("cube-skeleton", False),
            ("mod-lambda-cross", False),
            ("point", True),
            ("bergman-u(2,3)", True),
            ("bergman-u(2,4)", True),
            ("bergman-u(3,4)", True),
            ("product:line1×cross", False),
        ],
    )
    def test_criteria_agree(self, name, smooth):
        """Both smoothness criteria give the same verdict."""
        data = load_example(name)
        w = data.weights_or_default()
        assert smooth_check(data.fan, w, "local").passed is smooth
        assert smooth_check(data.fan, w, "aksnes").passed is smooth

    def test_compactification_duality(self, lambda2):
        assert compactification_duality(lambda2.fan).passed

    @pytest.mark.slow
    def test_compactification_duality_cube(self, cube):
        """H^{2,1} of the compactified cube skeleton has no dual partner."""
        assert not compactification_duality(cube.fan).passed

    def test_kunneth(self, line1, cross):
        assert kunneth_check(line1.fan, cross.fan).passed


class TestRelative:
    """Test class for subfans, relative complexes and mapping cones."""

    def test_subfan_of(self, lambda2):
        fan = lambda2.fan
        sub = subfan_of(fan, [fan.zero, fan.cone_id((0,)), fan.cone_id((2,))])
        assert sub.fan.cone_counts() == (1, 2)
        assert subfan_of(fan, []) is None

    def test_subfan_not_closed(self, lambda2):
        fan = lambda2.fan
        with pytest.raises(SubfanError, match="faces outside"):
            subfan_of(fan, [fan.cone_id((0, 2))])

    def test_relative_to_nothing(self, lambda2):
        """Relative to the empty subfan the complex is the Borel-Moore one."""
        cx = relative_complex(lambda2.fan, None, 1)
        assert cx.homology_dim(2) == 2

    def test_mapping_cone_of_identity(self, lambda2):
        """The cone of the identity is acyclic."""
        cx = build_complex(lambda2.fan, "borel_moore", 1)
        cone = mapping_cone(identity_map(cx))
        assert all(dim == 0 for dim in cone.homology_dims().values())


class TestModificationChecks:
    """Test class for the modification formulas."""

    def test_coefficients_along_cross(self, lambda2):
        report = verify_tm_coefficients(
            lambda2.fan, lambda2.weights_or_default(), lambda2.function
        )
        assert report.hypothesis
        assert report.passed
        assert report.checks

    def test_homology_along_cross(self, lambda2):
        report = verify_tm_homology(
            lambda2.fan, lambda2.weights_or_default(), lambda2.function
        )
        assert report.passed
        assert len(report.checks) == 5

    def test_degenerate_modification(self, lambda2):
        """A linear function changes nothing up to isomorphism."""
        w = lambda2.weights_or_default()
        fn = PLFunction.linear(lambda2.fan, (2, -1))
        assert verify_tm_coefficients(lambda2.fan, w, fn).passed
        report = verify_tm_homology(lambda2.fan, w, fn)
        assert report.passed
        assert len(report.checks) == 4

    def test_smoothness_needs_smooth_divisor(self, lambda2):
        """The cross is not smooth, so nothing is claimed for TM_f(Λ)."""
        report = modification_smoothness(
            lambda2.fan, lambda2.weights_or_default(), lambda2.function
        )
        assert report.hypothesis is False
        assert report.passed
        assert report.checks[-1].actual == "False"
