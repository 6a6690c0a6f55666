import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pendulum_holonomy.geometry import (
    EPS_POLE,
    LatitudeCircle,
    PoleProximity,
    SurfaceOfRevolution,
    sphere,
)

SQ2 = math.sqrt(2)
LATS = np.linspace(-1.45, 1.45, 50)
SURFACES = [SurfaceOfRevolution(1, 1), SurfaceOfRevolution(2, 1), SurfaceOfRevolution(1, 2)]

latitudes = st.floats(min_value=-1.5, max_value=1.5)
longitudes = st.floats(min_value=0.0, max_value=2 * math.pi)
semiaxes = st.floats(min_value=0.2, max_value=5.0)


class TestPosition:
    def test_equator_point(self):
        np.testing.assert_allclose(sphere().position(0, 0), [1, 0, 0], atol=1e-15)

    def test_sphere_latitude(self):
        np.testing.assert_allclose(sphere().position(math.pi / 6, 0), [math.cos(math.pi / 6), 0, 0.5], atol=1e-15)

    def test_ellipsoid(self, ellipsoid):
        np.testing.assert_allclose(ellipsoid.position(math.pi / 4, math.pi / 2), [0, SQ2, SQ2 / 2], atol=1e-15)

    @given(semiaxes, semiaxes, latitudes, longitudes)
    def test_on_surface(self, a, b, u, v):
        x, y, z = SurfaceOfRevolution(a, b).position(u, v)
        assert abs((x * x + y * y) / a**2 + z * z / b**2 - 1) <= 1e-12

    @pytest.mark.parametrize("u", [math.pi / 2, -math.pi / 2, math.pi / 2 - EPS_POLE / 2, math.nan])
    def test_pole(self, u):
        with pytest.raises(PoleProximity):
            sphere().position(u, 0)


class TestPartials:
    def test_equator(self):
        xu, xv = sphere().partials(0, 0)
        np.testing.assert_allclose(xu, [0, 0, 1], atol=1e-15)
        np.testing.assert_allclose(xv, [0, 1, 0], atol=1e-15)

    @pytest.mark.parametrize("theta0", [0.1, math.pi / 6, 1.2])
    @pytest.mark.parametrize("t", [0.0, 1.0, 4.0])
    def test_parallel_speed(self, theta0, t):
        assert abs(np.linalg.norm(sphere().partials(theta0, t)[1]) - math.cos(theta0)) <= 1e-15

    def test_ellipsoid(self, ellipsoid):
        xu, xv = ellipsoid.partials(math.pi / 4, 0)
        np.testing.assert_allclose(xu, [-SQ2, 0, SQ2 / 2], atol=1e-15)
        np.testing.assert_allclose(xv, [0, SQ2, 0], atol=1e-15)

    @given(semiaxes, semiaxes, latitudes, longitudes)
    def test_tangent_and_matches_finite_differences(self, a, b, u, v):
        s = SurfaceOfRevolution(a, b)
        xu, xv = s.partials(u, v)
        n = s.unit_normal(u, v)
        assert abs(xu @ n) <= 1e-12 * max(a, b) and abs(xv @ n) <= 1e-12 * max(a, b)
        h = 1e-6
        fd_u = (s.position(u + h, v) - s.position(u - h, v)) / (2 * h)
        np.testing.assert_allclose(xu, fd_u, atol=1e-7 * max(a, b))


class TestNormal:
    @given(latitudes, longitudes)
    def test_sphere_normal_is_radial(self, u, v):
        s = sphere()
        np.testing.assert_allclose(s.unit_normal(u, v), s.position(u, v), atol=1e-15)

    def test_ellipsoid(self, ellipsoid):
        np.testing.assert_allclose(ellipsoid.unit_normal(math.pi / 4, 0), [1 / math.sqrt(5), 0, 2 / math.sqrt(5)], atol=1e-15)
        np.testing.assert_allclose(ellipsoid.unit_normal(0, 0), [1, 0, 0], atol=1e-15)

    @given(semiaxes, semiaxes, latitudes, longitudes)
    def test_unit_outward_and_cross_product(self, a, b, u, v):
        s = SurfaceOfRevolution(a, b)
        n = s.unit_normal(u, v)
        assert abs(np.linalg.norm(n) - 1) <= 1e-12
        xu, xv = s.partials(u, v)
        cross = np.cross(xv, xu)
        np.testing.assert_allclose(n, cross / np.linalg.norm(cross), atol=1e-12)
        assert n @ s.position(u, v) > 0


class TestFirstFundamentalForm:
    def test_sphere(self):
        th = 0.7
        ff = sphere().first_fundamental_form(th)
        assert ff.E == pytest.approx(1, abs=1e-15)
        assert ff.F == 0
        assert ff.G == pytest.approx(math.cos(th) ** 2, abs=1e-15)
        assert sphere().first_fundamental_form(0)[::2] == (1.0, 1.0)

    def test_ellipsoid(self, ellipsoid):
        ff = ellipsoid.first_fundamental_form(math.pi / 4)
        assert ff.E == pytest.approx(2.5, abs=1e-14)
        assert ff.G == pytest.approx(2.0, abs=1e-14)

    @given(semiaxes, semiaxes, latitudes, longitudes)
    def test_orthogonal_and_positive(self, a, b, u, v):
        ff = SurfaceOfRevolution(a, b).first_fundamental_form(u, v)
        assert abs(ff.F) <= 1e-12 * max(a, b) ** 2
        assert ff.E > 0 and ff.G > 0 and ff.det > 0


class TestChristoffel:
    def test_sphere_table(self):
        c = sphere().christoffel(math.pi / 4)
        assert c.g1_22 == pytest.approx(0.5, abs=1e-15)
        assert c.g2_12 == pytest.approx(-1, abs=1e-15)
        assert c.g1_11 == c.g1_12 == c.g2_11 == c.g2_22 == 0

    @pytest.mark.parametrize("s", SURFACES)
    def test_equator_all_zero(self, s):
        assert all(abs(g) <= 1e-15 for g in s.christoffel(0))
        assert all(abs(g) <= 1e-8 for g in s.christoffel_fd(0))

    def test_ellipsoid_table(self, ellipsoid):
        c = ellipsoid.christoffel(math.pi / 4)
        # E_u / 2E = sin u cos u (a^2 - b^2) / E = 0.5 * 3 / 2.5
        assert c.g1_11 == pytest.approx(0.6, abs=1e-15)
        assert c.g1_22 == pytest.approx(0.8, abs=1e-15)
        assert c.g2_12 == pytest.approx(-1, abs=1e-15)

    def test_fd_examples(self, ellipsoid):
        assert sphere().christoffel_fd(math.pi / 4, h=1e-5).g1_22 == pytest.approx(0.5, abs=1e-6)
        assert ellipsoid.christoffel_fd(math.pi / 4, h=1e-5).g1_11 == pytest.approx(0.6, abs=1e-6)

    def test_g1_11_against_other_closed_forms(self, ellipsoid):
        # the metric fixes both the factor and the sign of g1_11
        u = math.pi / 4
        e = ellipsoid.first_fundamental_form(u).E
        fd = ellipsoid.christoffel_fd(u).g1_11
        s, c = math.sin(u), math.cos(u)
        assert fd == pytest.approx(s * c * (4 - 1) / e, abs=1e-6)
        assert abs(fd - 2 * s * c * (1 - 4) / e) > 1.0

    @pytest.mark.parametrize("s", SURFACES)
    def test_fd_agrees_on_grid(self, s):
        for u in LATS:
            np.testing.assert_allclose(s.christoffel_fd(u, h=1e-5), s.christoffel(u), atol=1e-6)

    def test_independent_of_longitude(self, ellipsoid):
        for v in (0.0, 1.0, 3.0):
            np.testing.assert_allclose(ellipsoid.christoffel_fd(0.4, v), ellipsoid.christoffel(0.4), atol=1e-6)

    def test_symmetric_array(self, ellipsoid):
        g = ellipsoid.christoffel(0.3).as_array()
        np.testing.assert_array_equal(g, np.swapaxes(g, 1, 2))

    def test_pole(self):
        with pytest.raises(PoleProximity):
            sphere().christoffel(math.pi / 2)
        with pytest.raises(PoleProximity):
            sphere().christoffel_fd(math.pi / 2 - 2 * EPS_POLE, h=1e-5)
        with pytest.raises(ValueError):
            sphere().christoffel_fd(0.1, h=0)


class TestReductionToSphere:
    @given(st.floats(min_value=0.3, max_value=3.0), latitudes, longitudes)
    def test_equal_semiaxes_scale_the_sphere(self, r, u, v):
        s, unit = SurfaceOfRevolution(r, r), sphere()
        np.testing.assert_allclose(s.position(u, v), r * unit.position(u, v), rtol=1e-15, atol=1e-15)
        np.testing.assert_allclose(s.unit_normal(u, v), unit.unit_normal(u, v), atol=1e-15)
        np.testing.assert_allclose(s.christoffel(u), unit.christoffel(u), atol=1e-15)

    def test_sphere_closed_forms(self):
        for u in LATS:
            c = sphere().christoffel(u)
            assert c.g1_22 == pytest.approx(math.sin(u) * math.cos(u), abs=1e-15)
            assert c.g1_11 == 0.0


class TestFrame:
    def test_equator(self):
        f = LatitudeCircle(sphere(), 0.0).frame(0.0)
        np.testing.assert_allclose(f.E1, [0, 1, 0], atol=1e-15)
        np.testing.assert_allclose(f.E2, [0, 0, 1], atol=1e-15)
        np.testing.assert_allclose(f.E3, [1, 0, 0], atol=1e-15)

    @pytest.mark.parametrize("t", [0.0, 1.3, 5.0])
    def test_normal_height(self, ellipsoid, t):
        assert LatitudeCircle(sphere(), math.pi / 6).frame(t).E3[2] == pytest.approx(0.5, abs=1e-15)
        assert LatitudeCircle(ellipsoid, math.pi / 4).frame(t).E3[2] == pytest.approx(2 / math.sqrt(5), abs=1e-15)

    @pytest.mark.parametrize("s", SURFACES)
    @pytest.mark.parametrize("theta0", [-1.2, -0.3, 0.0, 0.5, 1.4])
    def test_orthonormal_right_handed(self, s, theta0):
        circle = LatitudeCircle(s, theta0)
        for t in np.linspace(0, 2 * math.pi, 100):
            m = circle.frame(t).matrix()
            np.testing.assert_allclose(m @ m.T, np.eye(3), atol=1e-12)
            assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("s", SURFACES)
    def test_frame_in_coordinate_basis(self, s):
        theta0 = 0.6
        circle = LatitudeCircle(s, theta0)
        mu = math.sqrt((s.a * math.sin(theta0)) ** 2 + (s.b * math.cos(theta0)) ** 2)
        for t in (0.0, 2.0):
            xu, xv = s.partials(theta0, t)
            f = circle.frame(t)
            np.testing.assert_allclose(f.E1, xv / (s.a * math.cos(theta0)), atol=1e-15)
            np.testing.assert_allclose(f.E2, xu / mu, atol=1e-15)

    @given(semiaxes, semiaxes, latitudes, longitudes)
    @settings(max_examples=50)
    def test_speed_constant(self, a, b, u, t):
        circle = LatitudeCircle(SurfaceOfRevolution(a, b), u)
        assert abs(np.linalg.norm(circle.velocity(t)) - a * math.cos(u)) <= 1e-12 * a

    def test_closed_loop(self, ellipsoid):
        circle = LatitudeCircle(ellipsoid, 0.8)
        np.testing.assert_allclose(circle.point(0), circle.point(2 * math.pi), atol=1e-15)

    def test_frame_component_round_trip(self, ellipsoid):
        circle = LatitudeCircle(ellipsoid, 0.8)
        x, y = circle.to_frame(*circle.from_frame(0.3, -1.1))
        assert (x, y) == pytest.approx((0.3, -1.1), abs=1e-15)


def test_invalid_surface():
    for a, b in [(0, 1), (1, -1), (math.inf, 1)]:
        with pytest.raises(ValueError):
            SurfaceOfRevolution(a, b)
    with pytest.raises(PoleProximity):
        LatitudeCircle(sphere(), 2.0)
