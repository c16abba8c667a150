"""Algebraic conditions for relative equilibria.

A configuration rotating rigidly as ``z(t) = exp(1j w t) z(0)`` solves the
equations of motion exactly when, for every body ``i``,

    w^2 (1 - r_i^2) z_i / (1 + r_i^2)^4
        = - sum_{j != i} m_j (r_j^2 + 1)^2 (1 + z_i conj(z_j)) (z_j - z_i) / T_ij^(3/2)

with ``T_ij = (r_i^2+1)^2 (r_j^2+1)^2 - [4 Re(z_i conj(z_j)) + (r_i^2-1)(r_j^2-1)]^2``.
The customary normalisation is ``w = 1/2``; it is the default here.

For collinear configurations symmetric about the origin (an optional body at
0 plus mirror pairs ``+p, -p``) the imaginary parts vanish, the mirror
equations duplicate each other, and each remaining equation is linear in the
masses. The linear form used throughout is

    4 w^2 (p^2 - 1) p / (1 + p^2)^4 = sum_j m_j k(p, q_j),
    k(p, q) = (1 + q^2)^2 sgn((q - p)(1 + p q)) / (2 (p - q)^2 (1 + p q)^2).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import AntipodalSingularity, NotCollinearSymmetric, SingularSystem
from .geometry import Configuration

#: the normalisation w = 1/2 built into the usual statement of the condition
DEFAULT_OMEGA = 0.5
ANTIPODAL_RTOL = 1e-12
#: reduced residuals below this (times the equation scale) certify a solution
CERTIFY_TOL = 1e-10
#: condition-number ceiling for the small mass systems
MAX_CONDITION = 1e12


@dataclass(frozen=True)
class PairKernel:
    T: float
    numerator: complex


@dataclass
class ConditionResidual:
    per_body: np.ndarray
    max_abs: float


def _t_kernel(zi, zj):
    """Stable ``T_ij = 4 |z_i - z_j|^2 |1 + z_i conj(z_j)|^2`` and its scale."""
    ri2 = np.abs(zi) ** 2
    rj2 = np.abs(zj) ** 2
    t = 4.0 * np.abs(zi - zj) ** 2 * np.abs(1.0 + zi * np.conj(zj)) ** 2
    return t, ((ri2 + 1.0) * (rj2 + 1.0)) ** 2


def pair_kernel(zi, zj, mj, i=0, j=1):
    """Kernel of the ``(i, j)`` term in the condition system.

    Raises
    ------
    AntipodalSingularity
        If ``T_ij <= 1e-12 ((r_i^2+1)(r_j^2+1))^2``.
    """
    zi = complex(zi)
    zj = complex(zj)
    t, scale = _t_kernel(zi, zj)
    if t <= ANTIPODAL_RTOL * scale:
        raise AntipodalSingularity(i, j)
    rj2 = abs(zj) ** 2
    num = mj * (rj2 + 1.0) ** 2 * (1.0 + zi * zj.conjugate()) * (zj - zi)
    return PairKernel(float(t), complex(num))


def condition_residual(config, omega=DEFAULT_OMEGA):
    """Left minus right side of the condition, one complex value per body."""
    z = config.z
    m = config.masses
    n = len(z)
    zi = z[:, None]
    zj = z[None, :]
    t, scale = _t_kernel(zi, zj)
    off = ~np.eye(n, dtype=bool)
    bad = np.argwhere(off & (t <= ANTIPODAL_RTOL * scale))
    if bad.size:
        i, j = sorted(int(v) for v in bad[0])
        raise AntipodalSingularity(i, j)
    rj2 = np.abs(zj) ** 2
    num = m[None, :] * (rj2 + 1.0) ** 2 * (1.0 + zi * np.conj(zj)) * (zj - zi)
    t32 = np.where(off, t, 1.0) ** 1.5
    rhs = np.where(off, num / t32, 0.0).sum(axis=1)
    r2 = np.abs(z) ** 2
    lhs = omega ** 2 * (1.0 - r2) * z / (1.0 + r2) ** 4
    per_body = lhs + rhs
    return ConditionResidual(per_body, float(np.max(np.abs(per_body))))


# -- collinear symmetric configurations ------------------------------------

def symmetric_configuration(radii, pair_masses, origin_mass=None):
    """Bodies ordered ``[origin], +p_1, -p_1, +p_2, -p_2, ...``."""
    radii = np.asarray(radii, dtype=float)
    pair_masses = np.asarray(pair_masses, dtype=float)
    z = []
    m = []
    if origin_mass is not None:
        z.append(0.0)
        m.append(origin_mass)
    for p, mp in zip(radii, pair_masses):
        z += [p, -p]
        m += [mp, mp]
    return Configuration(np.asarray(z, dtype=complex), m)


def split_symmetric(config, tol=0.0):
    """Decompose a collinear symmetric configuration.

    Returns
    -------
    origin_mass : float or None
    radii : ndarray
        Increasing positive radii of the mirror pairs.
    pair_masses : ndarray

    Raises
    ------
    NotCollinearSymmetric
    """
    z = config.z
    m = config.masses
    scale = max(1.0, float(np.max(np.abs(z))))
    if np.any(np.abs(z.imag) > tol * scale):
        raise NotCollinearSymmetric("all positions must be real")
    x = z.real
    at_origin = np.abs(x) <= tol * scale
    if at_origin.sum() > 1:
        raise NotCollinearSymmetric("more than one body at the origin")
    origin_mass = float(m[at_origin][0]) if at_origin.any() else None
    pos = np.flatnonzero(x > tol * scale)
    neg = np.flatnonzero(x < -tol * scale)
    if len(pos) != len(neg):
        raise NotCollinearSymmetric("bodies do not come in mirror pairs")
    pos = pos[np.argsort(x[pos])]
    neg = neg[np.argsort(-x[neg])]
    if not (np.allclose(x[pos], -x[neg], rtol=tol, atol=0.0)
            and np.allclose(m[pos], m[neg], rtol=max(tol, 1e-15), atol=0.0)):
        raise NotCollinearSymmetric("mirror partners differ in radius or mass")
    return origin_mass, x[pos], m[pos]


def collinear_kernel(p, q):
    """Coefficient ``k(p, q)`` of ``m_j`` in the reduced equation at ``p``.

    Vectorised over ``p`` and ``q``. Singular at ``p = q`` and ``p q = -1``.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    u = (q - p) * (1.0 + p * q)
    return (1.0 + q * q) ** 2 * np.sign(u) / (2.0 * u * u)


def radial_term(p, omega=DEFAULT_OMEGA):
    """``4 w^2 (p^2 - 1) p / (1 + p^2)^4``, left side of a reduced equation."""
    p = np.asarray(p, dtype=float)
    return 4.0 * omega ** 2 * (p * p - 1.0) * p / (1.0 + p * p) ** 4


def collinear_reduce(config, omega=DEFAULT_OMEGA):
    """Real reduced equations, one per mirror pair (the ``+p`` member).

    The value for the pair at radius ``p`` is

        4 w^2 (p^2 - 1) p / (1 + p^2)^4 - sum_j m_j k(p, q_j)

    which is ``-4 Re`` of that body's :func:`condition_residual` entry. The
    origin body's equation vanishes identically and is omitted.
    """
    origin_mass, radii, masses = split_symmetric(config)
    prod = np.abs(np.multiply.outer(radii, radii) - 1.0)
    if np.any(prod <= ANTIPODAL_RTOL):
        i, j = np.argwhere(prod <= ANTIPODAL_RTOL)[0]
        raise AntipodalSingularity(int(min(i, j)), int(max(i, j)))
    out = np.empty(len(radii))
    for i, p in enumerate(radii):
        total = 0.0
        if origin_mass is not None:
            total += origin_mass * collinear_kernel(p, 0.0)
        for j, (q, mq) in enumerate(zip(radii, masses)):
            if j != i:
                total += mq * collinear_kernel(p, q)
            total += mq * collinear_kernel(p, -q)
        out[i] = radial_term(p, omega) - total
    return out


@dataclass
class LinearMassSystem:
    """Equations ``const[i] = sum_j matrix[i, j] * unknowns[j]``.

    The innermost pair carries unit mass and its contribution sits in
    ``const``. ``unknowns`` names the columns: ``"mu"`` for the origin body
    (when present) followed by the masses of the outer pairs.
    """

    const: np.ndarray
    matrix: np.ndarray
    unknowns: tuple
    radii: np.ndarray
    omega: float = DEFAULT_OMEGA
    with_origin: bool = True

    def residual(self, x):
        x = np.asarray(x, dtype=float)
        return self.const - np.einsum("...ij,...j->...i", self.matrix, x)

    def scale(self, x):
        """Magnitude of the largest term in each equation, for relative tests."""
        x = np.asarray(x, dtype=float)
        terms = np.abs(self.matrix * x[..., None, :])
        return np.maximum(np.abs(self.const), terms.max(axis=-1))


PAIR_NAMES = {2: ("m",), 3: ("M", "m")}


def linear_mass_system(radii, omega=DEFAULT_OMEGA, with_origin=True, names=None):
    """Build the linear mass equations for symmetric collinear positions.

    ``radii`` may carry leading batch dimensions, shape ``(..., k)``.
    """
    radii = np.asarray(radii, dtype=float)
    k = radii.shape[-1]
    if names is None:
        names = PAIR_NAMES.get(k, tuple(f"m{j}" for j in range(1, k)))
    p = radii[..., :, None]
    q = radii[..., None, :]
    same = np.eye(k, dtype=bool)
    # contribution of the whole pair j to the equation of pair i
    with np.errstate(divide="ignore", invalid="ignore"):
        near = np.where(same, 0.0, collinear_kernel(p, np.where(same, p + 1.0, q)))
    pair = near + collinear_kernel(p, -q)
    const = radial_term(radii, omega) - pair[..., :, 0]
    cols = [pair[..., :, j] for j in range(1, k)]
    unknowns = tuple(names)
    if with_origin:
        cols.insert(0, collinear_kernel(radii, 0.0))
        unknowns = ("mu",) + unknowns
    matrix = np.stack(cols, axis=-1) if cols else np.zeros(radii.shape + (0,))
    return LinearMassSystem(const, matrix, unknowns, radii, omega, with_origin)


def solve_linear_mass_system(system):
    """Exact solve of a square (possibly batched) mass system.

    Returns the solution array; entries of singular batch members are NaN.
    A single (unbatched) singular system raises :class:`SingularSystem`.
    """
    a = system.matrix
    b = system.const
    if a.shape[-1] != a.shape[-2]:
        raise ValueError("system is not square; use least squares")
    batched = a.ndim > 2
    # equilibrate rows and columns so the test measures genuine singularity
    with np.errstate(divide="ignore", invalid="ignore"):
        eq = a / np.abs(a).max(axis=-1, keepdims=True)
        eq = eq / np.abs(eq).max(axis=-2, keepdims=True)
        cond = np.linalg.cond(eq) if a.size else np.zeros(a.shape[:-2])
    cond = np.where(np.isnan(cond), np.inf, cond)
    ok = np.isfinite(cond) & (cond < MAX_CONDITION)
    if not batched:
        if not ok:
            raise SingularSystem(f"mass system is singular (cond={cond:.3g})")
        return np.linalg.solve(a, b)
    x = np.full(b.shape, np.nan)
    if ok.any():
        x[ok] = np.linalg.solve(a[ok], b[ok][..., None])[..., 0]
    return x


@dataclass
class MassSolution:
    """Masses solving (part of) a reduced condition system.

    ``residual_max`` is the largest absolute residual over all reduced
    equations of the case, whichever method produced the masses.
    """

    masses: dict
    method: str
    residual_max: float
    positive: bool
    residuals: list = field(default_factory=list)
    residual_scale: float = 1.0

    @property
    def mu(self):
        return self.masses.get("mu")

    @property
    def m(self):
        return self.masses.get("m")

    @property
    def M(self):
        return self.masses.get("M")

    @property
    def certified(self):
        """Residual small relative to the size of the equations' terms."""
        return bool(np.isfinite(self.residual_max)
                    and self.residual_max <= CERTIFY_TOL * max(1.0, self.residual_scale))

    def to_dict(self):
        return {
            "masses": dict(self.masses),
            "method": self.method,
            "residuals": list(self.residuals),
            "residual_max": self.residual_max,
            "residual_scale": self.residual_scale,
            "positive": self.positive,
            "certified": self.certified,
        }


def mass_solution(system, x, method):
    """Package a mass vector with its back-substituted residuals."""
    x = np.asarray(x, dtype=float)
    res = system.residual(x)
    return MassSolution(
        masses={name: float(v) for name, v in zip(system.unknowns, x)},
        method=method,
        residual_max=float(np.max(np.abs(res))),
        positive=bool(np.all(x > 0)),
        residuals=[float(v) for v in res],
        residual_scale=float(np.max(system.scale(x))),
    )


def full_configuration(radii, solution, with_origin=True):
    """Configuration with unit inner pair and the solved masses."""
    masses = [1.0] + [solution.masses[n] for n in solution.masses if n != "mu"]
    origin = solution.masses.get("mu") if with_origin else None
    return symmetric_configuration(radii, masses, origin)
