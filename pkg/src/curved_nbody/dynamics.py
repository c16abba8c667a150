"""Equations of motion on the stereographic sphere.

From the Lagrangian ``L = T + U`` with
``T = 1/2 sum m_i 4 |zdot_i|^2 / (1 + |z_i|^2)^2`` the Euler-Lagrange
equations are

    zddot_i = 2 conj(z_i) zdot_i^2 / (1 + |z_i|^2)
              + (1 + |z_i|^2)^2 / (2 m_i) * dU/dconj(z_i)

and the energy ``T - U`` is conserved.
"""

import csv
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import SingularityReached, StepSizeUnderflow
from .geometry import (Configuration, _gradient_terms, _check_pairs,
                       geodesic_sin, pairwise_distances, potential)


@dataclass
class State:
    positions: np.ndarray
    velocities: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=complex)
        self.velocities = np.asarray(self.velocities, dtype=complex)
        if self.positions.shape != self.velocities.shape:
            raise ValueError("positions and velocities must have equal length")


@dataclass
class IntegrationSettings:
    t_final: float
    rel_tol: float = 1e-12
    abs_tol: float = 1e-12
    max_step: float = 1e-2
    #: stop when some pair has |sin d| below this
    singular_sin: float = 1e-8
    #: hard cap on right-hand-side evaluations
    max_evaluations: int = 5_000_000
    method: str = "DOP853"
    extra_events: list = field(default_factory=list)

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.max_step > 0):
            raise ValueError("tolerances and max_step must be positive")
        if not self.t_final > 0:
            raise ValueError("t_final must be positive")


def _accel(z, v, m, check=True):
    if check:
        _check_pairs(z)
    r2 = np.abs(z) ** 2
    grad = _gradient_terms(z, m).sum(axis=1)
    return 2.0 * np.conj(z) * v * v / (1.0 + r2) + (1.0 + r2) ** 2 / (2.0 * m) * grad


def acceleration(config, state):
    """Second derivatives of all positions at ``state``.

    ``config`` supplies the masses; positions are taken from ``state``.
    """
    return _accel(state.positions, state.velocities, config.masses)


def kinetic_energy(config, state):
    r2 = np.abs(state.positions) ** 2
    speed2 = np.abs(state.velocities) ** 2
    return float(0.5 * np.sum(config.masses * 4.0 * speed2 / (1.0 + r2) ** 2))


def total_energy(config, state):
    """Conserved energy ``T - U``."""
    cfg = Configuration(state.positions, config.masses)
    return kinetic_energy(config, state) - potential(cfg)


def rigid_rotation_state(config, omega=1.0):
    """Initial data of the rigid rotation ``z(t) = exp(1j omega t) z(0)``."""
    return State(config.z.copy(), 1j * omega * config.z, 0.0)


def _pack(state):
    z, v = state.positions, state.velocities
    return np.concatenate([z.real, z.imag, v.real, v.imag])


def _unpack(y, n):
    return y[:n] + 1j * y[n:2 * n], y[2 * n:3 * n] + 1j * y[3 * n:]


def _min_pair_sin(z):
    n = len(z)
    if n < 2:
        return np.inf, 0, 0
    iu, ju = np.triu_indices(n, k=1)
    s = geodesic_sin(z[iu], z[ju])
    k = int(np.argmin(s))
    return float(s[k]), int(iu[k]), int(ju[k])


class _Budget(Exception):
    pass


def integrate(config, state0, settings, times=None, info=None):
    """Integrate the equations of motion with an adaptive Runge-Kutta scheme.

    Parameters
    ----------
    config : Configuration
        Supplies the masses (its positions are ignored).
    state0 : State
        Initial positions and velocities, at ``state0.t``.
    settings : IntegrationSettings
    times : array_like, optional
        Output times in ``[state0.t, state0.t + settings.t_final]``. Defaults
        to 101 uniform samples.
    info : dict, optional
        Filled with ``t_end`` (where integration stopped), ``t_events`` and
        ``evaluations``.

    Returns
    -------
    list of State

    Raises
    ------
    SingularityReached
        A pair came within ``settings.singular_sin`` of a collision or of
        antipodal alignment.
    StepSizeUnderflow
        The step size collapsed or the evaluation budget ran out.
    """
    m = config.masses
    n = len(m)
    t0 = float(state0.t)
    t1 = t0 + settings.t_final
    if times is None:
        times = np.linspace(t0, t1, 101)
    times = np.asarray(times, dtype=float)
    calls = [0]

    def rhs(t, y):
        calls[0] += 1
        if calls[0] > settings.max_evaluations:
            raise _Budget()
        z, v = _unpack(y, n)
        a = _accel(z, v, m, check=False)
        return np.concatenate([v.real, v.imag, a.real, a.imag])

    def near_singular(t, y):
        z, _ = _unpack(y, n)
        return _min_pair_sin(z)[0] - settings.singular_sin

    near_singular.terminal = True
    near_singular.direction = -1

    events = [near_singular] + list(settings.extra_events)
    _check_pairs(state0.positions)
    try:
        sol = solve_ivp(rhs, (t0, t1), _pack(state0), method=settings.method,
                        rtol=settings.rel_tol, atol=settings.abs_tol,
                        max_step=settings.max_step, dense_output=True,
                        events=events)
    except _Budget:
        raise StepSizeUnderflow(
            f"evaluation budget of {settings.max_evaluations} exhausted")
    if info is not None:
        info["t_end"] = float(sol.t[-1])
        info["t_events"] = [e.tolist() for e in sol.t_events]
        info["evaluations"] = calls[0]
    if sol.status == -1:
        raise StepSizeUnderflow(sol.message)
    if sol.t_events[0].size:
        t_hit = float(sol.t_events[0][0])
        z, _ = _unpack(sol.y_events[0][0], n)
        _, i, j = _min_pair_sin(z)
        raise SingularityReached(t_hit, i, j)
    t_end = float(sol.t[-1])
    out = []
    for t in times[times <= t_end + 1e-12 * max(1.0, abs(t_end))]:
        z, v = _unpack(sol.sol(min(t, t_end)), n)
        out.append(State(z, v, float(t)))
    return out


def write_trajectory_csv(path_or_file, config, trajectory):
    """Write ``t, re(z_1), im(z_1), ..., energy, min_pairwise_distance``."""
    n = config.n
    header = ["t"]
    for k in range(1, n + 1):
        header += [f"re_z{k}", f"im_z{k}"]
    header += ["energy", "min_pairwise_distance"]

    def rows():
        for s in trajectory:
            d = pairwise_distances(s.positions)
            d = d[np.triu_indices(n, k=1)]
            row = [s.t]
            for zk in s.positions:
                row += [zk.real, zk.imag]
            row += [total_energy(config, s), float(d.min()) if d.size else float("nan")]
            yield [format(float(x), ".17g") for x in row]

    if hasattr(path_or_file, "write"):
        w = csv.writer(path_or_file, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows())
    else:
        with open(path_or_file, "w", newline="") as fh:
            write_trajectory_csv(fh, config, trajectory)
