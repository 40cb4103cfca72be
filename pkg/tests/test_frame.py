import math

import numpy as np
import pytest

from warpcurv.frame import (
    BRACKET_PATTERN,
    DIM,
    FramePoint,
    bracket_table,
    frame_derivative,
    hyperbolic_helpers,
    jacobi_residual,
    jacobi_tensor,
)
from warpcurv import jets
from warpcurv.warp import PlainHyperbolic, einstein_profile

from conftest import ALPHA_2

PLAIN = PlainHyperbolic()


def grid_points(profile, count=5):
    us = np.linspace(profile.domain_lower + 0.1, 4.0, count)
    return [FramePoint(float(s), float(u)) for s in np.linspace(0.3, 2.5, count) for u in us]


PROFILES = [
    PLAIN,
    einstein_profile(3, 0.05),
    einstein_profile(3, ALPHA_2),
    einstein_profile(3, -0.5),
]


class TestHyperbolicHelpers:
    def test_values_at_one(self):
        a, b, c = hyperbolic_helpers(1.0)
        assert (a.value, b.value, c.value) == pytest.approx((1.543081, 1.175201, 3.762196), abs=1e-6)

    @pytest.mark.parametrize("sigma", [0.2, 1.0, 2.7])
    def test_identities(self, sigma):
        a, b, c = hyperbolic_helpers(sigma)
        assert a.value**2 + b.value**2 == pytest.approx(c.value, rel=1e-12)
        assert b.value**2 - a.value**2 == pytest.approx(-1.0, abs=1e-12 * a.value**2)
        # the identity also holds for the derivative slots
        lhs = a * a + b * b - c
        assert np.allclose(lhs.slots(), 0.0, atol=1e-12 * c.value)


class TestBracketTable:
    def test_central_bracket(self):
        t = bracket_table(FramePoint(1.0, 2.0), PLAIN)
        assert t.coefficient(3, 1, 2) == pytest.approx(1.037315, abs=1e-6)

    def test_fibre_bracket(self):
        t = bracket_table(FramePoint(1.0, 2.0), PLAIN)
        assert t.coefficient(5, 5, 6) == pytest.approx(7 / (2 * math.sqrt(3)), rel=1e-14)

    def test_y1_y5_commute(self):
        t = bracket_table(FramePoint(0.7, 1.9), einstein_profile(3, 0.05))
        assert np.all(t.c.value[:, 0, 4] == 0.0)

    @pytest.mark.parametrize("profile", PROFILES, ids=lambda p: p.label)
    def test_antisymmetry_exact(self, profile):
        for p in grid_points(profile, 3):
            c = bracket_table(p, profile).c
            # the fibre entry has NaN second-order slots: W''' is not tracked
            for slot in c.slots():
                assert np.array_equal(slot, -slot.transpose(0, 2, 1), equal_nan=True)

    def test_sparsity_pattern(self):
        c = bracket_table(FramePoint(0.9, 1.6), einstein_profile(3, 0.05)).c.value
        for i in range(1, DIM + 1):
            for j in range(i + 1, DIM + 1):
                expected = set(BRACKET_PATTERN.get((i, j), ()))
                nonzero = {k + 1 for k in range(DIM) if c[k, i - 1, j - 1] != 0.0}
                assert nonzero == expected, (i, j)
        assert len(BRACKET_PATTERN) == 11
        assert sum(len(v) for v in BRACKET_PATTERN.values()) == 13

    @pytest.mark.parametrize("u", [1.3, 2.0, 3.5])
    def test_unscaled_theta_component(self, u):
        # [Y1, Y2] has Y5-coefficient 2W/u; with Y5 = theta/(uW) this is 2 d/dtheta
        t = bracket_table(FramePoint(1.1, u), PLAIN)
        W = math.sqrt(u * u - 1.0)
        assert t.coefficient(5, 1, 2) * u * W == pytest.approx(2.0 * W * W, rel=1e-14)


class TestFrameDerivative:
    def test_y6_of_u_squared(self):
        got = frame_derivative(lambda s, u: u * u, 6, FramePoint(0.4, 2.0), PLAIN)
        assert got == pytest.approx(4.0 * math.sqrt(3.0), rel=1e-14)

    def test_y4_of_cosh_sigma(self):
        got = frame_derivative(lambda s, u: jets.cosh(s), 4, FramePoint(1.0, 2.0), PLAIN)
        assert got == pytest.approx(math.sinh(1.0) / 2.0, rel=1e-14)

    @pytest.mark.parametrize("direction", [1, 2, 3, 5])
    def test_group_directions_vanish(self, direction):
        f = lambda s, u: jets.cosh(s) * u + jets.sqrt(u)
        assert frame_derivative(f, direction, FramePoint(0.8, 1.5), PLAIN) == 0.0

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            frame_derivative(lambda s, u: u, 7, FramePoint(0.8, 1.5), PLAIN)


class TestJacobi:
    def test_plain_point(self):
        assert jacobi_residual(FramePoint(1.0, 2.0), PLAIN) <= 1e-10

    def test_warped_point(self):
        assert jacobi_residual(FramePoint(0.5, 1.3), einstein_profile(3, 0.05)) <= 1e-10

    @pytest.mark.parametrize("profile", PROFILES, ids=lambda p: p.label)
    def test_grid(self, profile):
        assert max(jacobi_residual(p, profile) for p in grid_points(profile)) <= 1e-10

    def test_mutation_breaks_jacobi(self):
        point = FramePoint(1.0, 2.0)
        t = bracket_table(point, PLAIN)
        for slot in t.c.slots():
            slot[4, 0, 1] = 0.0
            slot[4, 1, 0] = 0.0
        assert jacobi_residual(point, PLAIN, t) > 0.1

    def test_tensor_is_cyclic(self):
        J = jacobi_tensor(bracket_table(FramePoint(0.6, 1.7), einstein_profile(3, 0.05)))
        assert np.allclose(J, J.transpose(0, 2, 3, 1), atol=1e-13)
