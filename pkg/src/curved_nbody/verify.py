"""Independent checks of computed relative equilibria.

Residual back-substitution lives in :mod:`conditions`; this module adds the
dynamical side (fitting the rotation rate, integrating the rigid rotation)
and the sampling-based audits of the lemmas and of the solution set.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import binomtest, qmc

from . import family5, family7, lemmas
from .conditions import CERTIFY_TOL, condition_residual, linear_mass_system, solve_linear_mass_system
from .dynamics import (IntegrationSettings, _accel, integrate, rigid_rotation_state,
                       total_energy)
from .errors import Inadmissible, NegativeOmegaSquared, UnknownLemma
from .geometry import pairwise_distances

#: relative spread of the fitted rotation rate that certifies an equilibrium
OMEGA_CONSISTENCY = 1e-8


def threads():
    """Worker count from ``NBODY_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("NBODY_THREADS", "1")))
    except ValueError:
        return 1


def ordered_map(fn, items):
    """``map`` over a thread pool; results come back in input order."""
    items = list(items)
    n = threads()
    if n == 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


# -- rotation rate -----------------------------------------------------------

@dataclass
class OmegaFit:
    omega: float
    consistency: float
    per_body: list

    def to_dict(self):
        return asdict(self)


def fit_angular_velocity(config, masses=None, min_weight=1e-12):
    """Rotation rate that balances the forces under ``z(t) = exp(i w t) z(0)``.

    Substituting the rigid rotation into the equations of motion gives, for
    every body, ``w^2 g_i = F_i`` with ``g_i = z_i (r_i^2 - 1)/(1 + r_i^2)``
    and ``F_i`` the force term. Each body with ``g_i != 0`` yields its own
    ``w_i^2``; the returned rate is the least-squares fit over bodies and
    ``consistency`` the largest relative deviation of the ``w_i``.

    Raises
    ------
    NegativeOmegaSquared
    """
    if masses is not None:
        config = config.with_masses(masses)
    z = config.z
    r2 = np.abs(z) ** 2
    force = _accel(z, np.zeros_like(z), config.masses)
    g = z * (r2 - 1.0) / (1.0 + r2)
    use = np.abs(g) > min_weight
    if not use.any():
        raise NegativeOmegaSquared("no body constrains the rotation rate")
    w2_body = (np.conj(g[use]) * force[use]).real / np.abs(g[use]) ** 2
    w2 = float(np.sum((np.conj(g[use]) * force[use]).real) / np.sum(np.abs(g[use]) ** 2))
    if not (w2 > 0 and np.all(w2_body > 0)):
        raise NegativeOmegaSquared(f"fitted squared rates {w2_body.tolist()}")
    omega = float(np.sqrt(w2))
    w_body = np.sqrt(w2_body)
    # tangential force residue also breaks rigid rotation
    tangential = np.abs(force[use] - w2_body * g[use]) / np.abs(force[use])
    spread = np.max(np.abs(w_body - omega)) / omega
    return OmegaFit(omega, float(max(spread, float(np.max(tangential)))), w_body.tolist())


# -- rigid rotation ----------------------------------------------------------

@dataclass
class DriftReport:
    omega: float
    periods: float
    t_final: float
    distance_drift: float
    radius_drift: float
    energy_drift: float
    tol: float
    aborted: bool = False
    t_abort: float = None

    @property
    def passed(self):
        return (not self.aborted and self.distance_drift < self.tol
                and self.radius_drift < self.tol)

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _pair_distances(z):
    d = pairwise_distances(z)
    return d[np.triu_indices(len(z), k=1)]


def rigid_rotation_check(config, periods=1.0, tol=1e-6, omega=None, abort=1e-2,
                         samples_per_period=200, settings=None):
    """Integrate the rigid-rotation initial data and measure shape drift.

    Drift is the largest relative change of any pairwise geodesic distance
    (and, separately, of any ``|z_i|``) against ``t = 0``. Integration stops
    early once the radius drift exceeds ``abort``; the report is then marked
    ``aborted`` and carries the drift at that moment.
    """
    if omega is None:
        omega = fit_angular_velocity(config).omega
    t_final = periods * 2 * np.pi / omega
    z0 = config.z
    r0 = np.abs(z0)
    d0 = _pair_distances(z0)
    n = config.n
    scale_r = np.where(r0 > 0, r0, 1.0)

    def runaway(t, y):
        r = np.hypot(y[:n], y[n:2 * n])
        return abort - np.max(np.abs(r - r0) / scale_r)

    runaway.terminal = True
    runaway.direction = -1
    if settings is None:
        settings = IntegrationSettings(t_final=t_final)
    settings.t_final = t_final
    settings.extra_events = [runaway]
    state0 = rigid_rotation_state(config, omega)
    times = np.linspace(0.0, t_final, int(np.ceil(samples_per_period * periods)) + 1)
    info = {}
    traj = integrate(config, state0, settings, times, info)
    e0 = total_energy(config, state0)
    dist = rad = en = 0.0
    for s in traj:
        dist = max(dist, float(np.max(np.abs(_pair_distances(s.positions) - d0) / d0)))
        rad = max(rad, float(np.max(np.abs(np.abs(s.positions) - r0) / scale_r)))
        en = max(en, abs(total_energy(config, s) - e0) / max(1.0, abs(e0)))
    t_end = info["t_end"]
    aborted = t_end < t_final * (1 - 1e-12)
    if aborted:
        rad = max(rad, abort)
    return DriftReport(omega, float(periods), float(t_final), dist, rad, en, tol,
                       aborted, float(t_end) if aborted else None)


def linear_growth_rate(config, omega=None, h=1e-6):
    """Largest real part of the linearised flow in the rotating frame.

    A positive value means small perturbations of the relative equilibrium
    grow like ``exp(rate t)``, which bounds how long a numerically integrated
    rigid rotation can stay within a drift tolerance.
    """
    if omega is None:
        omega = fit_angular_velocity(config).omega
    m = config.masses
    n = config.n

    def field(y):
        w = y[:n] + 1j * y[n:2 * n]
        u = y[2 * n:3 * n] + 1j * y[3 * n:]
        acc = _accel(w, u + 1j * omega * w, m) - 2j * omega * u + omega ** 2 * w
        return np.concatenate([u.real, u.imag, acc.real, acc.imag])

    y0 = np.concatenate([config.z.real, config.z.imag, np.zeros(2 * n)])
    jac = np.empty((4 * n, 4 * n))
    for k in range(4 * n):
        e = np.zeros(4 * n)
        e[k] = h
        jac[:, k] = (field(y0 + e) - field(y0 - e)) / (2 * h)
    return float(np.max(np.linalg.eigvals(jac).real))


def verification_report(config, periods=1.0, tol=1e-6, omega=None):
    """Residual, rotation-rate fit and drift of one configuration, as a dict."""
    res = condition_residual(config) if omega is None else condition_residual(config, omega)
    record = {
        "inputs": {
            "bodies": [{"mass": float(mk), "re": float(zk.real), "im": float(zk.imag)}
                       for mk, zk in zip(config.masses, config.z)],
            "omega": omega,
            "periods": periods,
            "tol": tol,
        },
        "residuals": {"per_body_abs": np.abs(res.per_body).tolist(), "max_abs": res.max_abs},
        "omega": None,
        "consistency": None,
        "drift": None,
        "verdict": "",
    }
    try:
        fit = fit_angular_velocity(config)
    except NegativeOmegaSquared as exc:
        record["verdict"] = f"not a relative equilibrium: {exc}"
        return record
    record["omega"] = fit.omega
    record["consistency"] = fit.consistency
    drift = rigid_rotation_check(config, periods, tol, omega if omega else fit.omega)
    record["drift"] = drift.to_dict()
    certified = res.max_abs < CERTIFY_TOL and fit.consistency < OMEGA_CONSISTENCY
    if certified and drift.passed:
        record["verdict"] = "certified relative equilibrium, rigid rotation confirmed"
    elif certified:
        record["verdict"] = "certified relative equilibrium, dynamically unstable"
    else:
        record["verdict"] = "not a relative equilibrium"
    return record


# -- lemma audits ------------------------------------------------------------

def _halton(dim, samples, seed):
    return qmc.Halton(d=dim, scramble=True, seed=seed).random(samples)


def _audit_lema2(samples, seed):
    u = _halton(2, samples, seed)
    a, r = np.sort(u, axis=1).T
    keep = a < r
    a, r = a[keep], r[keep]
    expr = lemmas.inside_pair_expression(a, r)
    bound = lemmas.inside_pair_lower_bound(a, r)
    margin = np.minimum(expr, bound)
    k = int(np.argmin(margin))
    checks = {
        "expression_ge_bound": bool(np.all(expr >= bound)),
        "bound_positive": bool(np.all(bound > 0)),
        "bound_minimum_closed_form": bool(np.allclose(
            lemmas.inside_pair_lower_bound(lemmas.lower_bound_argmin(r), r),
            lemmas.lower_bound_minimum(r), rtol=1e-9)),
    }
    return margin, [float(a[k]), float(r[k])], "0<a<r<1", checks


def _audit_lemma5(samples, seed):
    x = _halton(1, samples, seed)[:, 0]
    expr = lemmas.self_pair_expression(x)
    f = lemmas.self_pair_factors(x)
    denom = 8 * x ** 2 * (x ** 2 - 1) ** 2 * (x ** 2 + 1) ** 4
    root = lemmas.self_pair_D_root()
    d = lambda t: lemmas.self_pair_factors(t)["D"]
    checks = {
        "f_positive": bool(np.all(f["f"] > 0)),
        "h_positive": bool(np.all(f["h"] > 0)),
        "D_at_0_is_1": bool(d(0.0) == 1.0),
        "D_positive_on_unit_interval": bool(np.all(f["D"] > 0)),
        "D_sign_change_in_1_2": bool(d(1.0) > 0 > d(2.0) and 1 < root < 2),
        "factorisation": bool(np.allclose(expr, f["f"] * f["g"] / denom, rtol=1e-9)),
    }
    k = int(np.argmin(expr))
    return expr, [float(x[k])], "0<x<1", checks


def _audit_lemma4(samples, seed):
    x = 1.0 + 49.0 * _halton(1, samples, seed)[:, 0]
    expr = lemmas.outside_self_pair_expression(x)
    f = lemmas.outside_self_pair_factors(x)
    denom = 8 * x ** 2 * (x ** 2 - 1) ** 2 * (x ** 2 + 1) ** 4
    d = lambda t: lemmas.outside_self_pair_factors(t)["D"]
    checks = {
        "f_positive": bool(np.all(f["f"] > 0)),
        "g_positive": bool(np.all(f["g"] > 0)),
        "D_at_1_is_2": bool(d(1.0) == 2.0),
        "D_above_2": bool(np.all(f["D"] > 2)),
        "D_critical_point": bool(abs(lemmas.outside_D_critical_point() + 0.9334) < 1e-4),
        "factorisation": bool(np.allclose(expr, -f["f"] * f["g"] / denom, rtol=1e-9)),
    }
    margin = -expr
    k = int(np.argmin(margin))
    return margin, [float(x[k])], "1<x<50", checks


LEMMAS = {"lema2": _audit_lema2, "lemma5": _audit_lemma5, "lemma4": _audit_lemma4}


def lemma_audit(lemma_id, samples, seed):
    """Check a sign lemma on scrambled Halton samples of its domain.

    ``min_margin`` is the smallest value of the quantity that must be
    positive (the negated expression for ``lemma4``).

    Raises
    ------
    UnknownLemma
    """
    if lemma_id not in LEMMAS:
        raise UnknownLemma(f"unknown lemma {lemma_id!r}; known: {sorted(LEMMAS)}")
    margin, argmin, domain, checks = LEMMAS[lemma_id](int(samples), seed)
    violations = int(np.sum(~(margin > 0)))
    return {
        "lemma": lemma_id,
        "domain": domain,
        "samples": int(margin.size),
        "seed": seed,
        "violations": violations,
        "min_margin": float(np.min(margin)),
        "argmin": argmin,
        "checks": checks,
        "pass": violations == 0 and all(checks.values()),
    }


# -- solution-set measure ----------------------------------------------------

FAMILY_DIMS = {"five": 2, "seven": 3}
_CHECKERS = {"five": family5.check_admissible, "seven": family7.check_admissible}


def _count_positive(radii):
    """Certified positive exact solutions among a batch of admissible radii."""
    if len(radii) == 0:
        return 0
    system = linear_mass_system(radii)
    x = solve_linear_mass_system(system)
    finite = np.all(np.isfinite(x), axis=1)
    xs = np.where(finite[:, None], x, 0.0)
    res = np.max(np.abs(system.residual(xs)), axis=1)
    scale = np.maximum(1.0, np.max(system.scale(xs), axis=1))
    good = finite & np.all(x > 0, axis=1) & (res <= CERTIFY_TOL * scale)
    return int(np.sum(good))


def measure_estimate(family, bounds, samples, seed, chunk=2048):
    """Fraction of a box whose exact mass solve is positive and certified.

    Parameters
    ----------
    family : {"five", "seven"}
    bounds : sequence of float
        ``(lo, hi)`` per coordinate, flattened: ``a_lo, a_hi, r_lo, r_hi``
        or ``x_lo, x_hi, y_lo, y_hi, z_lo, z_hi``.
    samples : int
        Halton points drawn in the box. Points that are unordered or
        inadmissible are discarded and counted in ``rejected``.
    seed : int

    Returns
    -------
    dict
        ``fraction`` over the accepted points and its Wilson 95% interval.
    """
    if family not in FAMILY_DIMS:
        raise Inadmissible(f"family must be one of {sorted(FAMILY_DIMS)}")
    dim = FAMILY_DIMS[family]
    b = np.asarray(bounds, dtype=float).reshape(dim, 2)
    if np.any(b[:, 1] <= b[:, 0]):
        raise Inadmissible("each bound needs lo < hi")
    pts = qmc.scale(_halton(dim, int(samples), seed), b[:, 0], b[:, 1])
    check = _CHECKERS[family]
    keep = np.zeros(len(pts), dtype=bool)
    for i, p in enumerate(pts):
        try:
            check(*p)
            keep[i] = True
        except Inadmissible:
            pass
    accepted = pts[keep]
    chunks = [accepted[k:k + chunk] for k in range(0, len(accepted), chunk)]
    hits = sum(ordered_map(_count_positive, chunks))
    n = len(accepted)
    if n:
        ci = binomtest(hits, n).proportion_ci(confidence_level=0.95, method="wilson")
        lo, hi = float(ci.low), float(ci.high)
    else:
        lo = hi = float("nan")
    return {
        "family": family,
        "bounds": b.ravel().tolist(),
        "samples": int(samples),
        "seed": seed,
        "accepted": n,
        "rejected": int(len(pts) - n),
        "positive": hits,
        "fraction": hits / n if n else float("nan"),
        "wilson95": [lo, hi],
    }
