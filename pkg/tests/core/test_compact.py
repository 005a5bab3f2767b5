"""Tests for the canonical compactification."""

import pytest

from tropfan.core.compact import (
    compactify,
    face_label,
    fan_faces,
    open_subcomplex,
    star_subposet,
)
from tropfan.core.weights import tropical_modification
from tropfan.exceptions import ComplexError


class TestCompactify:
    """Test class for face enumeration and signs."""

    def test_face_counts(self, lambda2, cube):
        """Faces C^τ_σ are the pairs τ ≼ σ."""
        assert len(compactify(lambda2.fan).faces) == 25
        assert len(compactify(cube.fan).faces) == 65

    def test_fan_only(self, lambda2):
        """Sedentarity zero alone gives one face per cone."""
        c = compactify(lambda2.fan, sed_zero_only=True)
        assert len(c.faces) == 9
        assert all(face.sed == 0 for face in c.faces)

    def test_face_dimensions(self, lambda2):
        """A face has dimension dim σ - dim τ."""
        c = compactify(lambda2.fan)
        assert len(c.faces_of_dim(0)) == 9
        assert len(c.faces_of_dim(1)) == 12
        assert len(c.faces_of_dim(2)) == 4

    def test_signs_are_units(self, cube):
        """Every cover carries a sign ±1."""
        c = compactify(cube.fan)
        assert c.signs
        assert set(c.signs.values()) <= {1, -1}
        assert len(c.signs) == len(c.covers)

    def test_cover_kinds(self, lambda2):
        """Same-sedentarity covers and sedentarity drops are both present."""
        c = compactify(lambda2.fan)
        kinds = {cover.kind for cover in c.covers}
        assert kinds == {"same", "drop"}

    def test_face_lookup(self, lambda2):
        fan = lambda2.fan
        c = compactify(fan)
        ray = fan.cone_id((0,))
        face = c.faces[c.face(ray, fan.cone_id((0, 2)))]
        assert face.dim == 1
        assert face.rank == 1
        with pytest.raises(ComplexError, match="No face"):
            c.face(fan.cone_id((0, 2)), ray)

    def test_is_face(self, lambda2):
        """C^ρ_σ lies in C^0_σ and C^ρ_ρ lies in C^ρ_σ."""
        fan = lambda2.fan
        c = compactify(fan)
        ray, quadrant = fan.cone_id((0,)), fan.cone_id((0, 2))
        assert c.is_face(c.face(ray, quadrant), c.face(0, quadrant))
        assert c.is_face(c.face(ray, ray), c.face(ray, quadrant))
        assert not c.is_face(c.face(0, quadrant), c.face(ray, quadrant))

    def test_sign_of_non_cover(self, lambda2):
        c = compactify(lambda2.fan)
        with pytest.raises(ComplexError, match="do not form a cover"):
            c.sign(0, 0)

    def test_with_flipped_sign(self, lambda2):
        """Flipping touches exactly one cover."""
        fan = lambda2.fan
        c = compactify(fan)
        gamma, delta = c.face(0, 0), c.face(0, fan.cone_id((0,)))
        flipped = c.with_flipped_sign(gamma, delta)
        assert flipped.sign(gamma, delta) == -c.sign(gamma, delta)
        changed = [key for key in c.signs if c.signs[key] != flipped.signs[key]]
        assert changed == [(gamma, delta)]

    def test_reoriented(self, lambda2):
        """Reorienting a face negates the signs of its covers only."""
        fan = lambda2.fan
        c = compactify(fan)
        face = c.face(0, fan.cone_id((0, 2)))
        other = c.reoriented(face)
        for key, s in c.signs.items():
            expected = -s if face in key else s
            assert other.signs[key] == expected

    def test_face_label(self, lambda2):
        fan = lambda2.fan
        c = compactify(fan)
        assert face_label(c, c.face(fan.cone_id((0,)), fan.cone_id((0, 2)))) == "C^[0]_[0, 2]"


class TestOpenStrata:
    """Test class for open unions of strata and star subposets."""

    def test_fan_faces(self, lambda2):
        c = compactify(lambda2.fan)
        assert set(fan_faces(c).faces) == set(c.faces_with_sed(0))

    def test_not_down_closed(self, lambda2):
        """Sedentarities must be closed under taking faces."""
        c = compactify(lambda2.fan)
        with pytest.raises(ComplexError, match="down-closed"):
            open_subcomplex(c, [lambda2.fan.cone_id((0,))])

    def test_unknown_cone(self, lambda2):
        c = compactify(lambda2.fan)
        with pytest.raises(ComplexError, match="not a cone id"):
            open_subcomplex(c, [0, 42])

    def test_semi_open_modification(self, lambda2):
        """The modification with the stratum at infinity of the special ray."""
        mod = tropical_modification(
            lambda2.fan, lambda2.weights_or_default(), lambda2.function
        )
        c = compactify(mod.total)
        ray = mod.total.cone_id((mod.special_ray,))
        subset = open_subcomplex(c, [0, ray])
        assert len(subset.faces) == 14 + 5
        assert c.face(ray, ray) in subset

    def test_star_subposet(self, lambda2):
        """Faces with sedentarity containing a ray form its compactified star."""
        fan = lambda2.fan
        c = compactify(fan)
        assert len(star_subposet(c, fan.cone_id((0,)))) == 5
        assert len(star_subposet(c, fan.zero)) == 25
