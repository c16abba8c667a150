"""Stereographic model of the unit sphere.

Points are complex numbers ``z`` with metric ``4|dz|^2 / (1 + |z|^2)^2``.
The unit circle ``|z| = 1`` is the image of the equator, and ``z`` and
``-1/conj(z)`` are antipodal.

All pair quantities are computed from the two factors

    |z_k - z_j|          (chordal closeness)
    |1 + z_k conj(z_j)|  (closeness to the antipode)

which vanish exactly on the two singular sets and avoid the cancellation
in ``1 - cos(d)^2`` near ``d = 0`` and ``d = pi``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SingularPair

#: a pair with ``|sin d| < SINGULAR_SIN`` is treated as coincident/antipodal
SINGULAR_SIN = 1e-13


@dataclass(frozen=True)
class Body:
    """One particle: a mass and a stereographic coordinate.

    Masses are only required to be finite and nonzero; negative values are
    accepted so that algebraic solutions of the mass equations can be
    back-substituted even when they are unphysical.
    """

    mass: float
    z: complex

    def __post_init__(self):
        if not np.isfinite(self.mass) or self.mass == 0:
            raise ValueError(f"mass must be finite and nonzero, got {self.mass}")
        if not np.isfinite(complex(self.z)):
            raise ValueError(f"position must be finite, got {self.z}")


class Configuration:
    """Ordered collection of bodies on the curvature-one sphere.

    Stores the positions and masses as numpy arrays; ``bodies`` rebuilds the
    :class:`Body` view on demand.
    """

    def __init__(self, z, masses):
        z = np.asarray(z, dtype=complex).ravel()
        masses = np.asarray(masses, dtype=float).ravel()
        if z.shape != masses.shape:
            raise ValueError("positions and masses must have the same length")
        if not (np.all(np.isfinite(z)) and np.all(np.isfinite(masses))):
            raise ValueError("positions and masses must be finite")
        if np.any(masses == 0):
            raise ValueError("masses must be nonzero")
        if len(np.unique(z)) != len(z):
            raise ValueError("positions must be pairwise distinct")
        self.z = z
        self.masses = masses

    @classmethod
    def from_bodies(cls, bodies):
        bodies = list(bodies)
        return cls([b.z for b in bodies], [b.mass for b in bodies])

    @property
    def bodies(self):
        return [Body(float(m), complex(z)) for m, z in zip(self.masses, self.z)]

    @property
    def n(self):
        return len(self.z)

    def __len__(self):
        return len(self.z)

    def rotated(self, theta):
        return Configuration(np.exp(1j * theta) * self.z, self.masses)

    def with_masses(self, masses):
        return Configuration(self.z, masses)

    def __repr__(self):
        return f"Configuration(z={self.z!r}, masses={self.masses!r})"


def _pair_factors(zk, zj):
    """Return (N, D, |zk - zj|, |1 + zk conj(zj)|) for cos d = N / D."""
    zk = np.asarray(zk, dtype=complex)
    zj = np.asarray(zj, dtype=complex)
    rk2 = np.abs(zk) ** 2
    rj2 = np.abs(zj) ** 2
    num = 4.0 * np.real(zk * np.conj(zj)) + (rk2 - 1.0) * (rj2 - 1.0)
    den = (rk2 + 1.0) * (rj2 + 1.0)
    return num, den, np.abs(zk - zj), np.abs(1.0 + zk * np.conj(zj))


def geodesic_cos(zk, zj):
    """Cosine of the geodesic distance between two points.

    Works elementwise on arrays. The result is clamped to ``[-1, 1]``.

    Examples
    --------
    >>> geodesic_cos(0, 0.5)
    0.6
    """
    num, den, _, _ = _pair_factors(zk, zj)
    out = np.clip(num / den, -1.0, 1.0)
    return float(out) if out.ndim == 0 else out


def geodesic_sin(zk, zj):
    """Sine of the geodesic distance, ``2|zk - zj||1 + zk conj(zj)| / D``."""
    _, den, close, anti = _pair_factors(zk, zj)
    out = 2.0 * close * anti / den
    return float(out) if out.ndim == 0 else out


def geodesic_distance(zk, zj):
    """Geodesic distance in ``[0, pi]``.

    ``atan2(sin, cos)`` keeps full relative accuracy at both ends of the
    range, where ``arccos`` of the cosine would not.
    """
    num, den, close, anti = _pair_factors(zk, zj)
    out = np.arctan2(2.0 * close * anti, num)
    return float(out) if out.ndim == 0 else out


def pairwise_distances(z):
    """Matrix of geodesic distances between all positions in ``z``."""
    z = np.asarray(z, dtype=complex)
    return np.asarray(geodesic_distance(z[:, None], z[None, :]))


def _check_pairs(z, rows=None):
    n = len(z)
    rows = range(n) if rows is None else rows
    for i in rows:
        for j in range(n):
            if j == i:
                continue
            if geodesic_sin(z[i], z[j]) < SINGULAR_SIN:
                raise SingularPair(min(i, j), max(i, j))


def potential(config):
    """Force function ``U = sum_{i<j} m_i m_j cot d_ij``.

    Raises
    ------
    SingularPair
        If some pair is (numerically) coincident or antipodal.
    """
    z = config.z
    m = config.masses
    _check_pairs(z)
    iu, ju = np.triu_indices(len(z), k=1)
    num, den, close, anti = _pair_factors(z[iu], z[ju])
    cot = num / (2.0 * close * anti)
    return float(np.sum(m[iu] * m[ju] * cot))


def _gradient_terms(z, m):
    """Matrix G with G[i, j] = d(m_i m_j cot d_ij) / d conj(z_i), zero diagonal."""
    zi = z[:, None]
    zj = z[None, :]
    ri2 = np.abs(zi) ** 2
    rj2 = np.abs(zj) ** 2
    close = np.abs(zi - zj)
    anti = np.abs(1.0 + zi * np.conj(zj))
    n = len(z)
    eye = np.eye(n, dtype=bool)
    t32 = np.where(eye, 1.0, 8.0 * (close * anti) ** 3)
    g = (2.0 * m[:, None] * m[None, :] * (1.0 + ri2) * (1.0 + rj2) ** 2
         * (1.0 + zi * np.conj(zj)) * (zj - zi) / t32)
    g[eye] = 0.0
    return g


def potential_gradient_conj(config, i):
    """Wirtinger derivative ``dU/d conj(z_i)``.

    Equals ``(dU/dx_i + 1j * dU/dy_i) / 2`` for ``z_i = x_i + 1j * y_i``.
    """
    z = config.z
    _check_pairs(z, rows=[i])
    return complex(_gradient_terms(z, config.masses)[i].sum())


def potential_gradient_conj_all(config, check=True):
    """Vector of ``dU/d conj(z_i)`` for every body."""
    if check:
        _check_pairs(config.z)
    return _gradient_terms(config.z, config.masses).sum(axis=1)
