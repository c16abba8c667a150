import mpmath
import numpy as np
import pytest

from curved_nbody.conditions import (DEFAULT_OMEGA, collinear_kernel, collinear_reduce,
                                     condition_residual, linear_mass_system, pair_kernel,
                                     solve_linear_mass_system, split_symmetric,
                                     symmetric_configuration)
from curved_nbody.errors import AntipodalSingularity, NotCollinearSymmetric, SingularSystem
from curved_nbody.geometry import Configuration
from curved_nbody.verify import fit_angular_velocity

mpmath.mp.dps = 40


def oracle_cos(zk, zj):
    def emb(z):
        z = mpmath.mpc(z)
        r2 = abs(z) ** 2
        return (2 * z.real / (1 + r2), 2 * z.imag / (1 + r2), (r2 - 1) / (1 + r2))
    return sum(a * b for a, b in zip(emb(zk), emb(zj)))


def test_kernel_T_is_scaled_sine_squared():
    rng = np.random.default_rng(2)
    for _ in range(100):
        zi, zj = rng.normal(size=2) + 1j * rng.normal(size=2)
        d2 = ((abs(zi) ** 2 + 1) * (abs(zj) ** 2 + 1)) ** 2
        expected = float(d2 * (1 - oracle_cos(zi, zj) ** 2))
        assert pair_kernel(zi, zj, 1.0).T == pytest.approx(expected, rel=1e-10)


def test_kernel_at_origin():
    k = pair_kernel(0, 0.5, 2.0)
    assert k.T == pytest.approx(4 * 0.25)
    assert k.numerator == pytest.approx(2.0 * 1.25 ** 2 * 0.5)


def test_antipodal_pair_refused():
    with pytest.raises(AntipodalSingularity):
        pair_kernel(2.0, -0.5, 1.0)
    with pytest.raises(AntipodalSingularity):
        condition_residual(Configuration([0.0, 1.0, -1.0], [1, 1, 1]))


def test_origin_component_vanishes_by_symmetry():
    rng = np.random.default_rng(4)
    for _ in range(100):
        k = int(rng.integers(2, 5))
        radii = np.sort(rng.uniform(0.05, 4, k))
        cfg = symmetric_configuration(radii, rng.uniform(0.1, 3, k), rng.uniform(0.1, 3))
        res = condition_residual(cfg)
        assert abs(res.per_body[0]) < 1e-14


def test_mirror_partners_have_opposite_residuals():
    cfg = symmetric_configuration([0.4, 2.2], [1.0, 0.7], 1.2)
    res = condition_residual(cfg).per_body
    assert res[1] == pytest.approx(-res[2], abs=1e-15)
    assert res[3] == pytest.approx(-res[4], abs=1e-15)
    assert np.allclose(res.imag, 0)


def test_residual_is_rotation_covariant():
    cfg = Configuration([0.3 + 0.1j, -0.6j, 1.4, -0.2 - 0.9j], [1, 2, 0.5, 1.5])
    res = condition_residual(cfg).per_body
    rot = condition_residual(cfg.rotated(0.8)).per_body
    assert np.allclose(rot, np.exp(0.8j) * res, atol=1e-14)


def test_reduce_equals_real_part_of_residual():
    cfg = symmetric_configuration([0.4, 2.2, 3.1], [1.0, 0.7, 2.0], 1.2)
    reduced = collinear_reduce(cfg)
    res = condition_residual(cfg).per_body
    assert np.allclose(reduced, -4 * res[[1, 3, 5]].real, rtol=1e-13, atol=1e-16)


def test_reduce_matches_linear_system():
    radii = [0.4, 2.2, 3.1]
    mu, M, m = 1.2, 0.7, 2.0
    system = linear_mass_system(radii, names=("M", "m"))
    cfg = symmetric_configuration(radii, [1.0, M, m], mu)
    assert np.allclose(collinear_reduce(cfg), system.residual([mu, M, m]), rtol=1e-13)


# Independent closed forms of the two reduced equations of the five-body family
# (inner unit pair at +-a, pair of mass m at +-r, central mass mu), written as
# left side minus right side.

def both_outside(a, r, mu, m):
    eq_a = ((a * a - 1) * a / (1 + a * a) ** 4
            - (-mu / (2 * a * a) + (a * a + 1) ** 2 / (8 * a * a * (a * a - 1) ** 2)
               + m * (r * r + 1) ** 2 / (2 * (a * r + 1) ** 2 * (a - r) ** 2)
               + m * (r * r + 1) ** 2 / (2 * (r + a) ** 2 * (a * r - 1) ** 2)))
    eq_r = ((r * r - 1) * r / (1 + r * r) ** 4
            - (-mu / (2 * r * r) - (a * a + 1) ** 2 / (2 * (a * r + 1) ** 2 * (a - r) ** 2)
               + (a * a + 1) ** 2 / (2 * (r + a) ** 2 * (a * r - 1) ** 2)
               + m * (r * r + 1) ** 2 / (8 * r * r * (r * r - 1) ** 2)))
    return np.array([eq_a, eq_r])


def both_inside(a, r, mu, m):
    cross = (2 * a * r * (r * r + 1) ** 2 * (1 - r * r) * (1 - a * a)
             / ((a * a * r * r - 1) ** 2 * (a * a - r * r) ** 2))
    eq_a = ((a * a + 1) ** 2 / (8 * a * a * (1 - a * a) ** 2) - (1 - a * a) * a / (1 + a * a) ** 4
            - (-mu / (2 * a * a) + m * cross))
    eq_r = (0.5 * (a * a + 1) ** 2 * (1 / ((a * r + 1) ** 2 * (a - r) ** 2)
                                      + 1 / ((r + a) ** 2 * (a * r - 1) ** 2))
            - (1 - r * r) * r / (1 + r * r) ** 4
            - (-mu / (2 * r * r) - m * (r * r + 1) ** 2 / (8 * r * r * (r * r - 1) ** 2)))
    return np.array([eq_a, eq_r])


def straddle_below(a, r, mu, m):
    eq_a = (-(1 - a * a) * a / (1 + a * a) ** 4
            - (-mu / (2 * a * a) - (a * a + 1) ** 2 / (8 * a * a * (1 - a * a) ** 2)
               - 2 * m * (r * r + 1) ** 2 * a * r * (r * r - 1) * (1 - a * a)
               / ((a * a * r * r - 1) ** 2 * (r * r - a * a) ** 2)))
    eq_r = ((r * r - 1) * r / (1 + r * r) ** 4
            - (-mu / (2 * r * r) - (a * a + 1) ** 2 / (2 * (a * r + 1) ** 2 * (a - r) ** 2)
               - (a * a + 1) ** 2 / (2 * (r + a) ** 2 * (a * r - 1) ** 2)
               + m * (r * r + 1) ** 2 / (8 * r * r * (r * r - 1) ** 2)))
    return np.array([eq_a, eq_r])


def straddle_above(a, r, mu, m):
    eq_a = (-(1 - a * a) * a / (1 + a * a) ** 4 + (a * a + 1) ** 2 / (8 * a * a * (1 - a * a) ** 2)
            - (-mu / (2 * a * a) + m * (r * r + 1) ** 2 / 2
               * (1 / ((a * r + 1) ** 2 * (a - r) ** 2) + 1 / ((r + a) ** 2 * (a * r - 1) ** 2))))
    eq_r = ((r * r - 1) * r / (1 + r * r) ** 4
            - 2 * a * r * (a * a + 1) ** 2 * (r * r - 1) * (1 - a * a)
            / ((a * a * r * r - 1) ** 2 * (a * a - r * r) ** 2)
            - (-mu / (2 * r * r) + m * (r * r + 1) ** 2 / (8 * r * r * (r * r - 1) ** 2)))
    return np.array([eq_a, eq_r])


@pytest.mark.parametrize("oracle,a,r", [
    (both_outside, 2.0, 3.0), (both_outside, 1.3, 4.5),
    (both_inside, 0.3, 0.6), (both_inside, 0.1, 0.95),
    (straddle_below, 0.5, 1.5), (straddle_below, 0.2, 3.0),
    (straddle_above, 0.5, 3.0), (straddle_above, 0.9, 1.3),
])
def test_five_body_closed_forms(oracle, a, r):
    rng = np.random.default_rng(0)
    system = linear_mass_system([a, r])
    for mu, m in rng.uniform(0.1, 5, (5, 2)):
        expected = oracle(a, r, mu, m)
        got = system.residual([mu, m])
        # both sides are expressed with the same sign convention
        assert np.allclose(got, expected, rtol=1e-12, atol=1e-14)


def test_kernel_sign_and_symmetry():
    assert collinear_kernel(0.5, 0.0) == pytest.approx(-2.0)
    assert collinear_kernel(2.0, 0.0) == pytest.approx(-1 / 8)
    # a body further out along the line pulls outward
    assert collinear_kernel(0.5, 0.8) > 0


def test_symmetric_split_roundtrip():
    cfg = symmetric_configuration([0.4, 2.5], [1.0, 0.7], 1.2)
    mu, radii, masses = split_symmetric(cfg)
    assert mu == 1.2
    assert np.allclose(radii, [0.4, 2.5]) and np.allclose(masses, [1.0, 0.7])
    with pytest.raises(NotCollinearSymmetric):
        split_symmetric(Configuration([0.4, -0.5], [1, 1]))
    with pytest.raises(NotCollinearSymmetric):
        collinear_reduce(Configuration([0.4j, -0.4j], [1, 1]))
    with pytest.raises(AntipodalSingularity):
        collinear_reduce(symmetric_configuration([0.4, 2.5], [1.0, 0.7]))


def test_exact_solution_certifies_full_system():
    system = linear_mass_system([2.0, 3.0])
    x = solve_linear_mass_system(system)
    cfg = symmetric_configuration([2.0, 3.0], [1.0, x[1]], x[0])
    assert condition_residual(cfg).max_abs < 1e-10


def test_condition_rate_is_the_rotation_rate():
    # two equal masses: the residual vanishes at the dynamically fitted rate
    cfg = Configuration([0.5, -0.5], [1, 1])
    fit = fit_angular_velocity(cfg)
    assert condition_residual(cfg, omega=fit.omega).max_abs < 1e-13
    assert condition_residual(cfg, omega=DEFAULT_OMEGA).max_abs > 1e-3


def test_singular_system_raises():
    system = linear_mass_system([2.0, 3.0])
    system.matrix = np.array([[1.0, 2.0], [2.0, 4.0]])
    with pytest.raises(SingularSystem):
        solve_linear_mass_system(system)


def test_batched_solve_matches_single():
    radii = np.array([[2.0, 3.0], [0.5, 3.0], [1.3, 4.5]])
    batch = solve_linear_mass_system(linear_mass_system(radii))
    for row, x in zip(radii, batch):
        assert np.allclose(solve_linear_mass_system(linear_mass_system(row)), x, rtol=1e-13)
