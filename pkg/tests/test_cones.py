import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conepredictor.cones import HankelCone, PSDCone, make_cone, smat, svec
from conepredictor.cones.base import bisect_max_step, bisect_sigma
from conepredictor.errors import NoExplicitConjugate, OutsideCone

ALL_CONES = [
    "orthant 3", "psd 2", "psd 3", "soc 2", "soc 4", "hankel_poly 1", "hankel_poly 3",
    "disc2d", "parabola2d", ["orthant 2", "soc 3"], ["psd 2", "hankel_poly 2"],
]
CONES = [c for c in ALL_CONES if c not in ("disc2d", "parabola2d")]


def _point(spec, seed):
    cone = make_cone(spec)
    return cone, cone.random_interior(np.random.default_rng(seed))


# -- values, gradients, hessians at hand-computed points -------------------------


def test_values():
    assert make_cone("orthant 2").value([1.0, 1.0]) == 0.0
    assert make_cone("orthant 2").value([math.e, 1.0]) == pytest.approx(-1.0, abs=1e-15)
    assert make_cone("psd 2").value(svec(np.eye(2))) == pytest.approx(0.0, abs=1e-15)


def test_gradients():
    assert np.allclose(make_cone("orthant 2").gradient([1.0, 2.0]), [-1.0, -0.5])
    assert np.allclose(smat(make_cone("psd 2").gradient(svec(np.eye(2)))), -np.eye(2))
    assert np.array_equal(make_cone("disc2d").gradient([0.0, 0.0]), [0.0, 0.0])


def test_hessians():
    assert np.allclose(make_cone("orthant 2").hessian_matrix([1.0, 2.0]), np.diag([1.0, 0.25]))
    assert np.allclose(make_cone("disc2d").hessian_matrix([0.0, 0.0]), 2.0 * np.eye(2))
    h = svec(np.eye(2))
    q = h @ make_cone("psd 2").hessian_matrix(svec(np.diag([1.0, 4.0]))) @ h
    assert q == pytest.approx(1.0 + 1.0 / 16.0, rel=1e-14)


def test_third_derivative_orthant():
    t = make_cone("orthant 2").third_matrix([1.0, 1.0], [1.0, 0.0])
    assert np.allclose(t, np.diag([-2.0, 0.0]))


def test_third_derivative_disc_against_differences():
    cone = make_cone("disc2d")
    h = np.array([1.0, 0.0])
    t = 1e-4
    fd = (cone.hessian_matrix(t * h) - cone.hessian_matrix(-t * h)) / (2 * t)
    assert np.allclose(cone.third_matrix([0.0, 0.0], h), fd, atol=1e-7)


@pytest.mark.parametrize("spec", ["orthant 4", "psd 3", "soc 4", "hankel_poly 2"])
def test_third_derivative_along_x(spec):
    cone, x = _point(spec, 4)
    assert np.allclose(cone.third_matrix(x, x), -2.0 * cone.hessian_matrix(x), rtol=1e-10, atol=1e-10)


# -- sigma and max step ---------------------------------------------------------


def test_sigma_examples():
    assert make_cone("orthant 2").sigma_measure([1.0, 1.0], [2.0, -3.0]) == pytest.approx(2.0)
    assert make_cone("psd 2").sigma_measure(svec(np.eye(2)), svec(np.diag([3.0, -1.0]))) == pytest.approx(3.0)


@pytest.mark.parametrize("spec", CONES)
def test_sigma_of_minus_x_is_zero(spec):
    cone, x = _point(spec, 1)
    assert cone.sigma_measure(x, -x) == pytest.approx(0.0, abs=1e-12)


def test_max_step_examples():
    orth = make_cone("orthant 2")
    assert orth.max_step([1.0, 1.0], [-1.0, -2.0]) == pytest.approx(0.5)
    assert orth.max_step([1.0, 1.0], [1.0, 0.0]) == math.inf
    assert make_cone("psd 2").max_step(svec(np.eye(2)), svec(np.diag([-2.0, 1.0]))) == pytest.approx(0.5)


@pytest.mark.parametrize("spec", ALL_CONES)
@given(seed=st.integers(0, 10_000))
def test_closed_forms_match_bisection(spec, seed):
    cone, x = _point(spec, seed)
    d = np.random.default_rng(seed + 7).normal(size=cone.dim)
    a = cone.max_step(x, d)
    b = bisect_max_step(cone, x, d)
    assert (math.isinf(a) and math.isinf(b)) or a == pytest.approx(b, rel=1e-7)
    if cone.homogeneous:
        expected = bisect_sigma(cone, x, d)
    else:
        expected = {"disc2d": oracles.disc_sigma, "parabola2d": oracles.parabola_sigma}[spec](x, d)
    assert cone.sigma_measure(x, d) == pytest.approx(expected, rel=1e-7, abs=1e-9)


# -- conjugate points ------------------------------------------------------------


def test_conjugate_point_examples():
    assert np.allclose(make_cone("orthant 2").conjugate_point([1.0, 2.0]), [1.0, 0.5])
    assert np.allclose(make_cone("psd 2").conjugate_point(svec(np.eye(2))), svec(np.eye(2)))
    assert np.allclose(make_cone("orthant 1").conjugate_point([5.0]), [0.2])


@pytest.mark.parametrize("spec", ["orthant 3", "psd 3", "soc 4", ["orthant 2", "psd 2"]])
def test_conjugate_point_is_minus_gradient(spec):
    # self-scaled cones: the dual barrier is the same function, x(s) = -grad F(s)
    cone, s = _point(spec, 2)
    assert np.allclose(cone.conjugate_point(s), -cone.gradient(s), rtol=1e-12)


def test_hankel_has_no_closed_conjugate():
    with pytest.raises(NoExplicitConjugate):
        HankelCone(2).conjugate_point(HankelCone(2).random_interior(np.random.default_rng(0)))


# -- independent derivative formulas -------------------------------------------


@given(st.integers(0, 10_000), st.integers(1, 4))
def test_psd_gradient_is_minus_inverse(seed, n):
    cone = PSDCone(n)
    x = cone.random_interior(np.random.default_rng(seed))
    mat = oracles.psd_smat(x, n)
    assert np.allclose(cone.gradient(x), oracles.psd_svec(-np.linalg.inv(mat)), rtol=1e-9, atol=1e-9)


@given(st.integers(0, 10_000), st.integers(1, 4))
def test_hankel_value_is_minus_logdet(seed, n):
    cone = HankelCone(n)
    x = cone.random_interior(np.random.default_rng(seed))
    sign, logdet = np.linalg.slogdet(oracles.hankel_from_moments(x))
    assert sign > 0
    assert cone.value(x) == pytest.approx(-logdet, rel=1e-10, abs=1e-10)
    assert cone.nu == n + 1


@given(st.integers(0, 10_000), st.integers(2, 6))
def test_soc_gradient(seed, n):
    cone = make_cone(f"soc {n}")
    x = cone.random_interior(np.random.default_rng(seed))
    q = x[0] ** 2 - x[1:] @ x[1:]
    expected = -2.0 * np.concatenate([[x[0]], -x[1:]]) / q
    assert np.allclose(cone.gradient(x), expected, rtol=1e-9)


# -- structural properties ------------------------------------------------------


@pytest.mark.parametrize("spec", CONES)
@given(seed=st.integers(0, 10_000), tau=st.floats(0.1, 10.0))
def test_log_homogeneity(spec, seed, tau):
    cone, x = _point(spec, seed)
    assert cone.value(tau * x) == pytest.approx(cone.value(x) - cone.nu * math.log(tau), rel=1e-9, abs=1e-9)
    assert cone.gradient(x) @ x == pytest.approx(-cone.nu, rel=1e-9)


@pytest.mark.parametrize("spec", ALL_CONES)
@given(seed=st.integers(0, 10_000))
def test_hessian_is_positive_definite(spec, seed):
    cone, x = _point(spec, seed)
    assert np.linalg.eigvalsh(cone.hessian_matrix(x))[0] > 0.0


@pytest.mark.parametrize("spec", ALL_CONES)
def test_outside_points_are_refused(spec):
    cone, x = _point(spec, 0)
    far = x + 10.0 * cone.max_step(x, -x) * -x if spec not in ("disc2d", "parabola2d") else np.array([5.0, -5.0])
    assert not cone.contains(far)
    with pytest.raises(OutsideCone):
        cone.gradient(far)


def test_product_cone_adds_parameters():
    cone = make_cone(["orthant 2", "soc 3", "psd 2"])
    assert cone.dim == 2 + 3 + 3
    assert cone.nu == 2 + 2 + 2


@pytest.mark.parametrize("text", ["psd3", "psd 3", "psd(3)", "PSD 3"])
def test_descriptor_spellings(text):
    assert make_cone(text) == PSDCone(3)


@pytest.mark.parametrize("text", ["cube 3", "psd", "orthant -1", ""])
def test_bad_descriptors(text):
    with pytest.raises(ValueError):
        make_cone(text)
