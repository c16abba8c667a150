"""Symmetric collinear seven bodies: ``0, +-x, +-y, +-z`` with masses ``mu, 1, 1, M, M, m, m``.

The three reduced equations (bodies at ``x``, ``y``, ``z``) read

    A_i = a_i mu + b_i M + c_i m,    i = 1, 2, 3,

with ``a_i = -1/(2 p_i^2)``. The regime of ``x < y < z`` relative to the
unit circle and to the curves ``xy = 1``, ``xz = 1``, ``yz = 1`` fixes the
signs of the coefficients; three regimes admit no positive masses at all.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import lemmas
from .conditions import (DEFAULT_OMEGA, full_configuration, linear_mass_system,
                         mass_solution, solve_linear_mass_system)
from .errors import Inadmissible, SignAssertionFailed, WrongCase
from .verdicts import RegionVerdict, combination_certificate, sign_certificate

GUARD = 1e-6
#: default number of grid points in an existence scan
SCAN_POINTS = 1000
EXACT = "ExactLinearSolve"
NAMES = ("mu", "M", "m")


class SevenBodyCase(str, Enum):
    ALL_INSIDE = "AllInside"
    ALL_OUTSIDE = "AllOutside"
    INNER_BELOW = "InnerPairInside_ProductBelow"
    INNER_MID = "InnerPairInside_Mid"
    INNER_ABOVE = "InnerPairInside_ProductAbove"
    TWO_BELOW = "TwoPairsInside_Below"
    TWO_MID = "TwoPairsInside_Mid"
    TWO_ABOVE = "TwoPairsInside_Above"

    @property
    def solvable(self):
        return self not in NONEXISTENCE


NONEXISTENCE = (SevenBodyCase.ALL_INSIDE, SevenBodyCase.INNER_BELOW, SevenBodyCase.TWO_BELOW)

PAPER_CLAIMS = {case: ("none" if case in NONEXISTENCE else "exists") for case in SevenBodyCase}

# Coefficient signs as tabulated for each solvable regime. Where the
# tabulation lists one coefficient with both signs, or omits one, the entry
# follows the closed-form expression printed next to it.
PRINTED_SIGNS = {
    SevenBodyCase.ALL_OUTSIDE: dict(A1=-1, a1=-1, a2=-1, a3=-1, b1=1, b2=1, b3=1,
                                    c1=1, c2=1, c3=1),
    SevenBodyCase.INNER_MID: dict(a1=-1, a2=-1, a3=-1, b1=-1, b3=-1, A1=1, A2=1, b2=1,
                                  c1=1, c2=1, c3=1),
    SevenBodyCase.INNER_ABOVE: dict(a1=-1, a2=-1, a3=-1, b3=-1, A1=1, b1=1, b2=1,
                                    c1=1, c2=1, c3=1),
    SevenBodyCase.TWO_MID: dict(A1=1, A2=1, A3=1, b1=1, b3=1, c2=1, c3=1, a1=-1, a2=-1,
                                a3=-1, b2=-1, c1=-1),
    SevenBodyCase.TWO_ABOVE: dict(A1=1, A2=1, b1=1, b3=1, c1=1, c2=1, c3=1, a1=-1, a2=-1,
                                  a3=-1, b2=-1),
}


@dataclass(frozen=True)
class SevenBodyPositions:
    x: float
    y: float
    z: float

    def __post_init__(self):
        check_admissible(self.x, self.y, self.z)

    @property
    def radii(self):
        return np.array([self.x, self.y, self.z])


def check_admissible(x, y, z, guard=GUARD):
    x, y, z = float(x), float(y), float(z)
    if not all(np.isfinite(v) and v > 0 for v in (x, y, z)):
        raise Inadmissible(f"radii must be positive and finite, got {(x, y, z)}")
    if not (x < y < z):
        raise Inadmissible(f"need x < y < z, got {(x, y, z)}")
    if y - x <= guard or z - y <= guard:
        raise Inadmissible("radii too close to each other")
    for name, v in (("x", x), ("y", y), ("z", z)):
        if abs(v - 1.0) <= guard:
            raise Inadmissible(f"{name}=1 puts a mirror pair at antipodal points")
    for name, v in (("xy", x * y), ("xz", x * z), ("yz", y * z)):
        if abs(v - 1.0) <= guard:
            raise Inadmissible(f"{name} = 1 makes two bodies antipodal")


def classify7(x, y, z):
    """Regime of ``(x, y, z)``.

    >>> classify7(2, 3, 4).value
    'AllOutside'
    """
    check_admissible(x, y, z)
    if z < 1:
        return SevenBodyCase.ALL_INSIDE
    if x > 1:
        return SevenBodyCase.ALL_OUTSIDE
    if y > 1:
        if x * z < 1:
            return SevenBodyCase.INNER_BELOW
        return SevenBodyCase.INNER_MID if x * y < 1 else SevenBodyCase.INNER_ABOVE
    if y * z < 1:
        return SevenBodyCase.TWO_BELOW
    return SevenBodyCase.TWO_MID if x * z < 1 else SevenBodyCase.TWO_ABOVE


def reduced_system(x, y, z, omega=DEFAULT_OMEGA):
    """Rows: bodies ``x``, ``y``, ``z``; columns: ``mu, M, m``."""
    return linear_mass_system([x, y, z], omega=omega, names=("M", "m"))


@dataclass
class CoefficientSystem:
    """``A_i = a_i mu + b_i M + c_i m`` with the sign audit of the case."""

    case: SevenBodyCase
    A: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    positions: tuple
    sign_failures: dict = field(default_factory=dict)

    def value(self, name):
        return float(getattr(self, name[0])[int(name[1]) - 1])

    @property
    def signs_ok(self):
        return not self.sign_failures

    def to_dict(self):
        return {
            "case": self.case.value,
            "positions": list(self.positions),
            "A": self.A.tolist(), "a": self.a.tolist(),
            "b": self.b.tolist(), "c": self.c.tolist(),
            "sign_failures": dict(self.sign_failures),
        }


def audit_signs(case, values):
    """Entries of the tabulated sign pattern that ``values`` violate."""
    failures = {}
    for name, sign in PRINTED_SIGNS.get(case, {}).items():
        v = values(name)
        if not np.sign(v) == sign:
            failures[name] = {"expected": "positive" if sign > 0 else "negative", "value": v}
    return failures


def coefficient_system(x, y, z, strict=False):
    """Evaluate ``A_i, a_i, b_i, c_i`` for a regime that admits solutions.

    The tabulated sign pattern is checked and the violations are stored in
    ``sign_failures``; with ``strict=True`` any violation raises.

    Raises
    ------
    WrongCase
        In the three nonexistence regimes.
    SignAssertionFailed
        Only when ``strict`` is set.
    """
    case = classify7(x, y, z)
    if not case.solvable:
        raise WrongCase(f"no coefficient system in case {case.value}", case)
    s = reduced_system(x, y, z)
    cs = CoefficientSystem(case, s.const.copy(), s.matrix[:, 0].copy(), s.matrix[:, 1].copy(),
                           s.matrix[:, 2].copy(), (float(x), float(y), float(z)))
    cs.sign_failures = audit_signs(case, cs.value)
    if strict and cs.sign_failures:
        raise SignAssertionFailed(
            f"tabulated signs fail in {case.value}: {sorted(cs.sign_failures)}", cs.sign_failures)
    return cs


def solve_reduced(x, y, z, omega=DEFAULT_OMEGA):
    """Unique solution of the three reduced equations, any regime."""
    check_admissible(x, y, z)
    system = reduced_system(x, y, z, omega)
    return mass_solution(system, solve_linear_mass_system(system), EXACT)


def solve_masses_exact7(x, y, z, omega=DEFAULT_OMEGA):
    """Exact 3x3 solve for ``(mu, M, m)``.

    Raises
    ------
    WrongCase
    SingularSystem
    """
    case = classify7(x, y, z)
    if not case.solvable:
        raise WrongCase(f"no relative equilibria in case {case.value}", case)
    return solve_reduced(x, y, z, omega)


def configuration(x, y, z, solution):
    return full_configuration([x, y, z], solution)


# -- aggregated equations ----------------------------------------------------

@dataclass
class AggregatedEquation:
    """``const + sum_k coefficients[k] * mass_k = 0`` after one elimination and a sum.

    ``eliminated`` names the mass removed through equation ``pivot_row``.
    """

    name: str
    const: float
    coefficients: dict
    eliminated: str
    pivot_row: int

    def value(self, masses):
        return self.const + sum(c * masses[k] for k, c in self.coefficients.items())

    @property
    def admits_positive(self):
        """Whether some positive choice of the remaining masses satisfies it."""
        coefs = np.array(list(self.coefficients.values()))
        if self.const == 0:
            return True
        return bool(np.any(np.sign(coefs) == -np.sign(self.const)))

    def to_dict(self):
        return {"name": self.name, "const": self.const, "coefficients": dict(self.coefficients),
                "eliminated": self.eliminated, "pivot_row": self.pivot_row,
                "admits_positive": self.admits_positive}


def _aggregate(cs, pivot, name):
    """Solve row ``row`` for the ``pivot`` mass, substitute, add the other two rows."""
    cols = {"mu": cs.a, "M": cs.b, "m": cs.c}
    row = {"eee": 0, "Mm": 0, "Mmm": 1, "Mmm2": 1, "Mm4": 1}[name]
    p = cols[pivot]
    others = [k for k in range(3) if k != row]
    const = sum(cs.A[row] * p[k] - p[row] * cs.A[k] for k in others)
    coefs = {}
    for key, col in cols.items():
        if key == pivot:
            continue
        coefs[key] = float(sum(p[row] * col[k] - p[k] * col[row] for k in others))
    return AggregatedEquation(name, float(const), coefs, pivot, row)


AGGREGATED = {
    SevenBodyCase.ALL_OUTSIDE: ("eee", "mu"),
    SevenBodyCase.INNER_MID: ("Mm", "m"),
    SevenBodyCase.INNER_ABOVE: ("Mmm", "mu"),
    SevenBodyCase.TWO_MID: ("Mmm2", "m"),
    SevenBodyCase.TWO_ABOVE: ("Mm4", "m"),
}


def aggregated_equation(x, y, z):
    """The summed equation used for the regime of ``(x, y, z)``."""
    cs = coefficient_system(x, y, z)
    name, pivot = AGGREGATED[cs.case]
    return _aggregate(cs, pivot, name)


# -- existence scans ---------------------------------------------------------

@dataclass
class ScanPlan:
    """Free coordinate, its open interval, and the end it approaches."""

    free: str
    lo: float
    hi: float
    approach: str  # "lo", "hi" or "log"


def default_scan(case, fixed):
    """How each existence argument moves its free coordinate."""
    x = fixed.get("x")
    y = fixed.get("y")
    z = fixed.get("z")
    if case is SevenBodyCase.ALL_OUTSIDE:
        return ScanPlan("y", max(x, 0.5 * (x + z)), z, "hi")
    if case is SevenBodyCase.INNER_MID:
        return ScanPlan("y", 1.0, min(1 / x, z), "hi")
    if case is SevenBodyCase.INNER_ABOVE:
        return ScanPlan("y", max(1 / x, 1.0), z, "lo")
    if case is SevenBodyCase.TWO_MID:
        return ScanPlan("z", max(1 / y, 1.0), 1 / x, "lo")
    if case is SevenBodyCase.TWO_ABOVE:
        return ScanPlan("z", 1 / x, 100.0 / x, "log")
    raise WrongCase(f"no existence argument in case {case.value}", case)


def scan_grid(plan, points):
    """Geometric grid on the open interval, densest at the approached end."""
    lo, hi = plan.lo, plan.hi
    if not hi > lo:
        raise Inadmissible(f"empty scan interval ({lo}, {hi})")
    if plan.approach == "log":
        return np.geomspace(lo, hi, points + 2)[1:-1]
    width = hi - lo
    # stop short of the endpoint by more than the admissibility guard
    d = np.geomspace(width, max(width * 1e-6, min(10 * GUARD, width / 4)), points + 1)[1:]
    return hi - d if plan.approach == "hi" else lo + d


@dataclass
class ScanPoint:
    value: float
    solution: object
    case: str

    @property
    def positive(self):
        return bool(self.solution is not None and self.solution.positive)

    @property
    def certified(self):
        return bool(self.solution is not None and self.solution.certified)


@dataclass
class ExistenceSearch:
    case: SevenBodyCase
    fixed: dict
    plan: ScanPlan
    points: list

    @property
    def found(self):
        return [p for p in self.points if p.positive and p.certified]

    @property
    def skipped(self):
        return sum(p.solution is None for p in self.points)

    def to_dict(self):
        return {
            "case": self.case.value,
            "fixed": dict(self.fixed),
            "free": self.plan.free,
            "interval": [self.plan.lo, self.plan.hi],
            "scanned": len(self.points),
            "skipped": self.skipped,
            "found": [{"value": p.value, **p.solution.to_dict()} for p in self.found],
            "paper_claim": PAPER_CLAIMS[self.case],
            "outcome": "positive solutions found" if self.found else "no positive solution",
        }


def paper_existence_search(case, fixed, scan_range=None, points=SCAN_POINTS):
    """Scan the free coordinate of an existence argument with exact solves.

    Parameters
    ----------
    case : SevenBodyCase or str
    fixed : dict
        The two fixed coordinates, e.g. ``{"x": 2, "z": 4}``.
    scan_range : (float, float), optional
        Overrides the default open interval of the free coordinate.
    points : int

    Returns
    -------
    ExistenceSearch
        Every scanned point with its exact solution (``None`` where the
        point is inadmissible, in another regime, or singular).
    """
    case = SevenBodyCase(case)
    if not case.solvable:
        raise WrongCase(f"no existence argument in case {case.value}", case)
    fixed = {k: float(v) for k, v in fixed.items()}
    plan = default_scan(case, fixed)
    if scan_range is not None:
        plan = ScanPlan(plan.free, float(scan_range[0]), float(scan_range[1]), plan.approach)
    values = scan_grid(plan, points)
    radii = np.empty((len(values), 3))
    for k, name in enumerate("xyz"):
        radii[:, k] = values if name == plan.free else fixed[name]
    ok = np.zeros(len(values), dtype=bool)
    cases = []
    for i, (x, y, z) in enumerate(radii):
        try:
            c = classify7(x, y, z)
        except Inadmissible:
            cases.append(None)
            continue
        cases.append(c.value)
        ok[i] = c is case
    out = [ScanPoint(float(v), None, c) for v, c in zip(values, cases)]
    if ok.any():
        system = linear_mass_system(radii[ok], names=("M", "m"))
        sols = solve_linear_mass_system(system)
        for idx, x in zip(np.flatnonzero(ok), sols):
            if np.all(np.isfinite(x)):
                sub = reduced_system(*radii[idx])
                out[idx].solution = mass_solution(sub, x, EXACT)
    return ExistenceSearch(case, fixed, plan, out)


# -- nonexistence ------------------------------------------------------------

def nonexistence_witness7(x, y, z):
    """Certificate for the three nonexistence regimes.

    All inside: the equation of the body at ``z``. Inner pair inside with
    ``z < 1/x``: the body at ``x``. Two pairs inside with ``z < 1/y``: the
    body at ``y``.
    """
    case = classify7(x, y, z)
    system = reduced_system(x, y, z)
    return _witness(case, system, x, y, z)


def _witness(case, system, x, y, z):
    if case is SevenBodyCase.ALL_INSIDE:
        return sign_certificate(system, 2, "body at z", "lema2",
                                lemmas.inside_pair_expression(x, z))
    if case is SevenBodyCase.INNER_BELOW:
        return sign_certificate(system, 0, "body at x", "lemma5",
                                lemmas.self_pair_expression(x))
    if case is SevenBodyCase.TWO_BELOW:
        return sign_certificate(system, 1, "body at y", "lema2",
                                lemmas.inside_pair_expression(x, y))
    raise WrongCase(f"no nonexistence certificate in case {case.value}", case)


def violation_certificate(x, y, z):
    """Nonexistence certificate for any regime, or ``None``.

    The three nonexistence regimes use their lemma certificates; elsewhere
    a weighted sum of the three reduced equations is sought, which exists
    exactly when the unique solution has a nonpositive mass.
    """
    case = classify7(x, y, z)
    if case in NONEXISTENCE:
        return nonexistence_witness7(x, y, z)
    return combination_certificate(reduced_system(x, y, z))


def region_verdict(x, y, z):
    """Classify and, where solvable, settle existence with the exact solve."""
    case = classify7(x, y, z)
    verdict = RegionVerdict("seven", [float(x), float(y), float(z)], case.value,
                            PAPER_CLAIMS[case], None)
    if not case.solvable:
        verdict.certificate = nonexistence_witness7(x, y, z)
        verdict.exists = False if verdict.certificate.valid else None
        verdict.mass_constraint = "none"
        return verdict
    sol = solve_masses_exact7(x, y, z)
    verdict.solution = sol
    verdict.exists = bool(sol.positive and sol.certified)
    agg = aggregated_equation(x, y, z)
    verdict.mass_constraint = (f"{agg.name}: aggregated equation "
                               f"{'admits' if agg.admits_positive else 'excludes'} positive masses")
    if not sol.positive:
        verdict.certificate = combination_certificate(reduced_system(x, y, z))
        verdict.notes.append("the unique solution of the three reduced equations is not positive")
    return verdict


# -- six bodies (no central mass) -------------------------------------------

@dataclass
class SixBodyVerdict:
    status: str
    case: str
    certificate: object = None
    least_squares: object = None
    paper_procedure: dict = None

    def to_dict(self):
        return {
            "status": self.status,
            "case": self.case,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "least_squares": self.least_squares.to_dict() if self.least_squares else None,
            "paper_procedure": self.paper_procedure,
        }


def _six_paper_procedure(case, s):
    """Masses from the corollary's elimination, with residuals on all three rows."""
    A, b, c = s.const, s.matrix[:, 0], s.matrix[:, 1]
    if case is SevenBodyCase.INNER_MID:
        # m from row 1, then the sum of rows 2 and 3
        const = -c[0] * (A[1] + A[2]) + A[0] * (c[1] + c[2])
        coef = c[0] * (b[1] + b[2]) - b[0] * (c[1] + c[2])
        M = -const / coef
        m = (A[0] - b[0] * M) / c[0]
    else:
        # m from row 3, then the sum of rows 1 and 2
        lhs = c[2] * (A[0] + A[1]) - A[2] * (c[0] + c[1])
        coef = c[2] * (b[0] + b[1]) - b[2] * (c[0] + c[1])
        M = lhs / coef
        m = (A[2] - b[2] * M) / c[2]
    sol = mass_solution(s, [M, m], "PaperAggregatedFamily")
    return sol.to_dict()


def corollary_6body(x, y, z):
    """Six bodies ``+-x, +-y, +-z`` with masses ``1, M, m`` (no central body).

    Three equations constrain two masses. The two nonexistence regimes get
    their lemma certificates. Elsewhere the least-squares solution decides
    consistency, a weighted-sum certificate decides positivity, and in the
    two inner-pair regimes the corollary's own elimination is reported too.
    """
    case = classify7(x, y, z)
    s = linear_mass_system([x, y, z], with_origin=False, names=("M", "m"))
    if case in NONEXISTENCE[:2]:
        cert = _witness(case, s, x, y, z)
        return SixBodyVerdict("Nonexistence" if cert.valid else "CertificateFailed",
                              case.value, cert)
    xs, *_ = np.linalg.lstsq(s.matrix, s.const, rcond=None)
    ls = mass_solution(s, xs, "LeastSquares")
    cert = combination_certificate(s)
    if cert is not None:
        status = "Nonexistence"
    elif ls.positive and ls.certified:
        status = "Exists"
    else:
        status = "NoExactSolution"
    paper = (_six_paper_procedure(case, s)
             if case in (SevenBodyCase.INNER_MID, SevenBodyCase.INNER_ABOVE) else None)
    return SixBodyVerdict(status, case.value, cert, ls, paper)
