"""Symmetric collinear five bodies: ``0, +-a, +-r`` with masses ``mu, 1, 1, m, m``.

Two reduced equations (bodies at ``a`` and at ``r``) are linear in the two
unknown masses ``(mu, m)``. The position quadrant ``0 < a < r`` splits into
four regimes by the unit circle and the singular curve ``a r = 1``; in two
of them one equation has a left side and right side of opposite sign for
every choice of positive masses.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import lemmas
from .conditions import (DEFAULT_OMEGA, full_configuration, linear_mass_system,
                         mass_solution, solve_linear_mass_system)
from .errors import Inadmissible, MassNonpositive, SingularSystem, WrongCase
from .verdicts import RegionVerdict, combination_certificate, sign_certificate

#: positions closer than this to a singular curve are refused
GUARD = 1e-6

EXACT = "ExactLinearSolve"
PAPER = "PaperAggregatedFamily"


class FiveBodyCase(str, Enum):
    BOTH_INSIDE = "BothInside"
    BOTH_OUTSIDE = "BothOutside"
    STRADDLE_PRODUCT_BELOW = "Straddle_ProductBelow"
    STRADDLE_PRODUCT_ABOVE = "Straddle_ProductAbove"

    @property
    def solvable(self):
        return self in (FiveBodyCase.BOTH_OUTSIDE, FiveBodyCase.STRADDLE_PRODUCT_ABOVE)


NONEXISTENCE = (FiveBodyCase.BOTH_INSIDE, FiveBodyCase.STRADDLE_PRODUCT_BELOW)


@dataclass(frozen=True)
class FiveBodyPositions:
    a: float
    r: float

    def __post_init__(self):
        check_admissible(self.a, self.r)

    @property
    def radii(self):
        return np.array([self.a, self.r])


def check_admissible(a, r, guard=GUARD):
    a = float(a)
    r = float(r)
    if not (np.isfinite(a) and np.isfinite(r)) or a <= 0 or r <= 0:
        raise Inadmissible(f"radii must be positive and finite, got a={a}, r={r}")
    if not a < r:
        raise Inadmissible(f"need a < r, got a={a}, r={r}")
    if r - a <= guard:
        raise Inadmissible("a and r too close")
    for name, v in (("a", a), ("r", r)):
        if abs(v - 1.0) <= guard:
            raise Inadmissible(f"{name}=1 puts a mirror pair at antipodal points")
    if abs(a * r - 1.0) <= guard:
        raise Inadmissible("a*r = 1 makes a and -r antipodal")


def classify5(a, r):
    """Regime of ``(a, r)``.

    >>> classify5(0.5, 0.8).value
    'BothInside'
    """
    check_admissible(a, r)
    if r < 1:
        return FiveBodyCase.BOTH_INSIDE
    if a > 1:
        return FiveBodyCase.BOTH_OUTSIDE
    return FiveBodyCase.STRADDLE_PRODUCT_BELOW if a * r < 1 else FiveBodyCase.STRADDLE_PRODUCT_ABOVE


def reduced_system(a, r, omega=DEFAULT_OMEGA):
    """Linear system ``const = matrix @ (mu, m)``; row 0 is body ``a``, row 1 body ``r``."""
    return linear_mass_system([a, r], omega=omega)


@dataclass
class AggregatedCoefficients:
    """Sum of the two reduced equations, ``const = coef_mu * mu + coef_m * m``.

    Named ``A, B, C`` when both pairs are outside the unit circle and
    ``F1, F2, F3`` in the straddling regime with ``a r > 1``.
    """

    case: FiveBodyCase
    const: float
    coef_mu: float
    coef_m: float

    @property
    def names(self):
        return ("A", "B", "C") if self.case is FiveBodyCase.BOTH_OUTSIDE else ("F1", "F2", "F3")

    def as_dict(self):
        return dict(zip(self.names, (self.const, self.coef_mu, self.coef_m)))

    @property
    def mu_threshold(self):
        """Smallest admissible ``mu``: ``const/coef_mu`` when ``const < 0``, else 0."""
        return self.const / self.coef_mu if self.const < 0 else 0.0


def _outer_pair_coefficient(a, r):
    return (0.5 * (r * r + 1) ** 2
            * (1 / ((a * r + 1) ** 2 * (a - r) ** 2) + 1 / ((r + a) ** 2 * (a * r - 1) ** 2)
               + 0.25 / (r * r * (r * r - 1) ** 2)))


def aggregated_coefficients(a, r):
    """Coefficients of the summed equation, from their closed forms.

    Raises
    ------
    WrongCase
        Outside the two regimes where the sum is used to produce masses.
    """
    case = classify5(a, r)
    b = -0.5 * (1 / a ** 2 + 1 / r ** 2)
    c = _outer_pair_coefficient(a, r)
    if case is FiveBodyCase.BOTH_OUTSIDE:
        const = ((a * a - 1) * a / (a * a + 1) ** 4 + (r * r - 1) * r / (1 + r * r) ** 4
                 + 0.5 * (a * a + 1) ** 2 * (-0.25 / (a * a * (a * a - 1) ** 2)
                                            + 1 / ((a * r + 1) ** 2 * (a - r) ** 2)
                                            - 1 / ((r + a) ** 2 * (a * r - 1) ** 2)))
    elif case is FiveBodyCase.STRADDLE_PRODUCT_ABOVE:
        const = (-(1 - a * a) * a / (1 + a * a) ** 4
                 + (a * a + 1) ** 2 / (8 * a * a * (1 - a * a) ** 2)
                 + (r * r - 1) * r / (1 + r * r) ** 4
                 - 2 * a * r * (a * a + 1) ** 2 * (r * r - 1) * (1 - a * a)
                 / ((a * a * r * r - 1) ** 2 * (a * a - r * r) ** 2))
    else:
        raise WrongCase(f"no aggregated mass relation in case {case.value}", case)
    assert b < 0 and c > 0, (b, c)
    return AggregatedCoefficients(case, float(const), float(b), float(c))


def solve_masses_paper(a, r, mu):
    """Member of the one-parameter family ``m = (const - coef_mu mu) / coef_m``.

    Only the summed equation is imposed; the residuals against both reduced
    equations are reported and are generally nonzero.

    Raises
    ------
    WrongCase
    MassNonpositive
        When ``mu`` is at or below the threshold, making ``m <= 0``.
    """
    if not mu > 0:
        raise MassNonpositive(f"mu must be positive, got {mu}")
    agg = aggregated_coefficients(a, r)
    m = (agg.const - agg.coef_mu * mu) / agg.coef_m
    if not m > 0:
        raise MassNonpositive(
            f"m = {m:.6g} <= 0; need mu > {agg.mu_threshold:.17g}")
    return mass_solution(reduced_system(a, r), [mu, m], PAPER)


def solve_reduced(a, r, omega=DEFAULT_OMEGA):
    """Unique solution of both reduced equations, in any regime.

    This is the unrestricted back end of :func:`solve_masses_exact`, used to
    confirm that no positive solution hides in the nonexistence regimes.
    """
    check_admissible(a, r)
    system = reduced_system(a, r, omega)
    return mass_solution(system, solve_linear_mass_system(system), EXACT)


def solve_masses_exact(a, r, omega=DEFAULT_OMEGA):
    """Exact 2x2 solve for ``(mu, m)``.

    Raises
    ------
    WrongCase
        In the two nonexistence regimes.
    SingularSystem
    """
    case = classify5(a, r)
    if not case.solvable:
        raise WrongCase(f"no relative equilibria in case {case.value}", case)
    return solve_reduced(a, r, omega)


def configuration(a, r, solution):
    return full_configuration([a, r], solution)


def nonexistence_witness5(a, r):
    """Certificate for the two nonexistence regimes.

    Inside both pairs the equation of the outer body fails; when the pairs
    straddle the circle with ``a r < 1`` the equation of the inner body does.
    """
    case = classify5(a, r)
    system = reduced_system(a, r)
    if case is FiveBodyCase.BOTH_INSIDE:
        return sign_certificate(system, 1, "body at r", "lema2",
                                lemmas.inside_pair_expression(a, r))
    if case is FiveBodyCase.STRADDLE_PRODUCT_BELOW:
        return sign_certificate(system, 0, "body at a", "lemma5",
                                lemmas.self_pair_expression(a))
    raise WrongCase(f"no nonexistence certificate in case {case.value}", case)


@dataclass
class CorollaryVerdict:
    status: str
    case: str
    certificate: object = None

    def to_dict(self):
        return {"status": self.status, "case": self.case,
                "certificate": self.certificate.to_dict() if self.certificate else None}


def corollary_4body(a, r):
    """Four bodies ``+-a, +-r`` with masses ``1, 1, m, m`` (no central body)."""
    case = classify5(a, r)
    system = linear_mass_system([a, r], with_origin=False)
    if case is FiveBodyCase.BOTH_INSIDE:
        cert = sign_certificate(system, 1, "body at r", "lema2",
                                lemmas.inside_pair_expression(a, r))
    elif case is FiveBodyCase.STRADDLE_PRODUCT_BELOW:
        cert = sign_certificate(system, 0, "body at a", "lemma5",
                                lemmas.self_pair_expression(a))
    else:
        return CorollaryVerdict("NotCovered", case.value)
    return CorollaryVerdict("Nonexistence" if cert.valid else "CertificateFailed",
                            case.value, cert)


PAPER_CLAIMS = {
    FiveBodyCase.BOTH_INSIDE: "none",
    FiveBodyCase.STRADDLE_PRODUCT_BELOW: "none",
    FiveBodyCase.BOTH_OUTSIDE: "exists",
    FiveBodyCase.STRADDLE_PRODUCT_ABOVE: "exists",
}


def region_verdict(a, r):
    """Classify ``(a, r)`` and settle existence by certificate or exact solve."""
    case = classify5(a, r)
    verdict = RegionVerdict("five", [float(a), float(r)], case.value,
                            PAPER_CLAIMS[case], None)
    if not case.solvable:
        verdict.certificate = nonexistence_witness5(a, r)
        verdict.exists = False if verdict.certificate.valid else None
        verdict.mass_constraint = "none"
        return verdict
    agg = aggregated_coefficients(a, r)
    a_name, b_name, c_name = agg.names
    if agg.const >= 0:
        verdict.mass_constraint = f"mu > 0, m = ({a_name} - {b_name} mu)/{c_name}"
    else:
        verdict.mass_constraint = (f"mu > {a_name}/{b_name} = {agg.mu_threshold:.17g}, "
                                   f"m = ({a_name} - {b_name} mu)/{c_name}")
    sol = solve_masses_exact(a, r)
    verdict.solution = sol
    verdict.exists = bool(sol.positive and sol.certified)
    if not sol.positive:
        verdict.certificate = combination_certificate(reduced_system(a, r))
        verdict.notes.append("the unique solution of both reduced equations is not positive")
    return verdict


ATLAS_COLUMNS = ("a", "r", "case", "exists", "mu_exact", "m_exact", "residual")


def atlas_row(a, r):
    """One row of the region atlas; inadmissible points get case ``Inadmissible``."""
    try:
        verdict = region_verdict(a, r)
    except Inadmissible:
        return {"a": a, "r": r, "case": "Inadmissible", "exists": None,
                "mu_exact": None, "m_exact": None, "residual": None}
    try:
        sol = verdict.solution or solve_reduced(a, r)
    except SingularSystem:
        sol = None
    return {
        "a": a, "r": r, "case": verdict.case, "exists": verdict.exists,
        "mu_exact": sol.mu if sol else None,
        "m_exact": sol.m if sol else None,
        "residual": sol.residual_max if sol else None,
    }


def atlas(a_values, r_values):
    """Rows of :func:`atlas_row` over the grid, ``a`` varying slowest."""
    return [atlas_row(float(a), float(r)) for a in a_values for r in r_values]
