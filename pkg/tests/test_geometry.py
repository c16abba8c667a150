import mpmath
import numpy as np
import pytest

from curved_nbody.errors import SingularPair
from curved_nbody.geometry import (Body, Configuration, geodesic_cos, geodesic_distance,
                                   geodesic_sin, pairwise_distances, potential,
                                   potential_gradient_conj, potential_gradient_conj_all)

mpmath.mp.dps = 40


def sphere_point(z):
    """Inverse stereographic projection, computed independently in mpmath."""
    z = mpmath.mpc(z)
    r2 = abs(z) ** 2
    return (2 * z.real / (1 + r2), 2 * z.imag / (1 + r2), (r2 - 1) / (1 + r2))


def oracle_cos(zk, zj):
    p, q = sphere_point(zk), sphere_point(zj)
    return sum(a * b for a, b in zip(p, q))


def oracle_potential(z, m):
    total = mpmath.mpf(0)
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            total += m[i] * m[j] * mpmath.cot(mpmath.acos(oracle_cos(z[i], z[j])))
    return total


def random_config(rng, n):
    while True:
        r = rng.uniform(0.2, 2.5, n)
        th = rng.uniform(0, 2 * np.pi, n)
        z = r * np.exp(1j * th)
        iu, ju = np.triu_indices(n, 1)
        if np.min(geodesic_sin(z[iu], z[ju])) > 0.15:
            return Configuration(z, rng.uniform(0.5, 2.0, n))


def test_cos_examples():
    assert geodesic_cos(0, 0.5) == pytest.approx(0.6, abs=1e-15)
    assert geodesic_cos(0, 1) == pytest.approx(0.0, abs=1e-15)
    assert geodesic_cos(0.3 + 0.2j, 0.3 + 0.2j) == pytest.approx(1.0)
    # a and -1/a are antipodal
    assert geodesic_cos(2.0, -0.5) == pytest.approx(-1.0)


@pytest.mark.parametrize("a", [0.2, 0.5, 0.9, 1.5, 3.0])
def test_mirror_pair_distance(a):
    expected = np.arccos(((1 - a * a) ** 2 - 4 * a * a) / (1 + a * a) ** 2)
    assert geodesic_distance(a, -a) == pytest.approx(expected, rel=1e-12)


def test_unit_circle_pair_is_antipodal():
    assert geodesic_distance(1.0, -1.0) == pytest.approx(np.pi, rel=1e-15)


def test_cos_against_sphere_embedding():
    rng = np.random.default_rng(7)
    for _ in range(200):
        zk, zj = rng.normal(size=2) + 1j * rng.normal(size=2)
        assert geodesic_cos(zk, zj) == pytest.approx(float(oracle_cos(zk, zj)), abs=1e-13)


def test_distance_symmetric_and_sin_identity():
    rng = np.random.default_rng(3)
    z = rng.normal(size=6) + 1j * rng.normal(size=6)
    d = pairwise_distances(z)
    assert np.allclose(d, d.T, atol=1e-15)
    assert np.allclose(np.diag(d), 0)
    iu, ju = np.triu_indices(6, 1)
    c = geodesic_cos(z[iu], z[ju])
    s = geodesic_sin(z[iu], z[ju])
    assert np.allclose(c * c + s * s, 1, atol=1e-13)


def test_distance_accurate_near_coincidence():
    eps = 1e-9
    # near z = 0 the metric is 2|dz|
    assert geodesic_distance(0, eps) == pytest.approx(2 * eps, rel=1e-9)


def test_potential_examples():
    # unit masses a quarter great circle apart: cot(pi/2) = 0
    assert potential(Configuration([0, 1], [1, 1])) == pytest.approx(0, abs=1e-15)
    # cos = 3/5 gives cot = 3/4
    assert potential(Configuration([0, 0.5], [1, 1])) == pytest.approx(0.75, rel=1e-14)
    assert potential(Configuration([0, 0.5], [2, 3])) == pytest.approx(4.5, rel=1e-14)


def test_potential_against_oracle():
    rng = np.random.default_rng(11)
    for n in (3, 5, 7):
        cfg = random_config(rng, n)
        expected = float(oracle_potential(cfg.z, cfg.masses))
        assert potential(cfg) == pytest.approx(expected, rel=1e-11)


def test_potential_rotation_invariant():
    rng = np.random.default_rng(5)
    cfg = random_config(rng, 5)
    for theta in (0.3, 1.7, -2.2):
        assert potential(cfg.rotated(theta)) == pytest.approx(potential(cfg), rel=1e-12)


def fd_gradient(cfg, i, h=1e-5):
    def u(dz):
        z = cfg.z.copy()
        z[i] += dz
        return potential(Configuration(z, cfg.masses))
    dx = (u(h) - u(-h)) / (2 * h)
    dy = (u(1j * h) - u(-1j * h)) / (2 * h)
    return 0.5 * (dx + 1j * dy)


@pytest.mark.parametrize("seed", range(20))
def test_gradient_matches_finite_differences(seed):
    rng = np.random.default_rng(seed)
    cfg = random_config(rng, int(rng.integers(3, 8)))
    grads = potential_gradient_conj_all(cfg)
    for i in range(cfg.n):
        fd = fd_gradient(cfg, i)
        assert abs(grads[i] - fd) <= 1e-6 * max(abs(fd), 1e-3)
        assert potential_gradient_conj(cfg, i) == pytest.approx(grads[i], rel=1e-14)


def test_gradient_mirror_pair_at_origin_vanishes():
    cfg = Configuration([0, 0.7, -0.7], [1.3, 1, 1])
    assert abs(potential_gradient_conj(cfg, 0)) < 1e-15


def test_singular_pairs_raise():
    with pytest.raises(SingularPair):
        potential(Configuration([2.0, -0.5, 0.1j], [1, 1, 1]))
    with pytest.raises(SingularPair):
        potential_gradient_conj(Configuration([1.0, -1.0], [1, 1]), 0)


def test_configuration_validation():
    with pytest.raises(ValueError):
        Configuration([0, 0], [1, 1])
    with pytest.raises(ValueError):
        Configuration([0, 1], [1, 0])
    with pytest.raises(ValueError):
        Body(np.nan, 0.1)
    cfg = Configuration.from_bodies([Body(1.0, 0.2), Body(2.0, -0.3j)])
    assert cfg.n == 2
    assert cfg.bodies[1] == Body(2.0, -0.3j)
