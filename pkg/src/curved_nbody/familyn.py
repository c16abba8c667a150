"""Odd number of bodies: a central mass plus mirror pairs ``+-p_1 < ... < +-p_k``.

The innermost pair has unit mass. Three position patterns rule out
relative equilibria for every choice of positive masses:

(i)   every pair inside the unit circle, ``p_k < 1``;
(ii)  only the innermost pair inside, ``p_1 < 1 < p_2`` and ``p_k < 1/p_1``;
(iii) only the outermost pair outside, ``p_{k-1} < 1 < p_k`` and ``p_k < 1/p_{k-1}``.

In each, one reduced equation has a positive mass-free side and
coefficients that are all negative.
"""

from dataclasses import dataclass

import numpy as np

from . import lemmas
from .conditions import DEFAULT_OMEGA, linear_mass_system
from .errors import Inadmissible
from .verdicts import RegionVerdict, sign_certificate

GUARD = 1e-6


@dataclass(frozen=True)
class OddSymmetricPositions:
    """Radii of the mirror pairs; the body count is ``2 len(radii) + 1``."""

    radii: tuple

    def __post_init__(self):
        check_admissible(self.radii)

    @property
    def n(self):
        return 2 * len(self.radii) + 1


def check_admissible(radii, guard=GUARD):
    p = np.asarray(radii, dtype=float)
    if p.ndim != 1 or len(p) < 2:
        raise Inadmissible("need at least two pair radii (n >= 5)")
    if not np.all(np.isfinite(p)) or np.any(p <= 0):
        raise Inadmissible("radii must be positive and finite")
    if np.any(np.diff(p) <= guard):
        raise Inadmissible("radii must be strictly increasing")
    if np.any(np.abs(p - 1.0) <= guard):
        raise Inadmissible("a pair on the unit circle sits at antipodal points")
    prod = np.multiply.outer(p, p)[np.triu_indices(len(p), k=1)]
    if np.any(np.abs(prod - 1.0) <= guard):
        raise Inadmissible("two radii with product 1 make bodies antipodal")
    return p


@dataclass
class GeneralVerdict:
    status: str
    bullet: str
    n: int
    certificate: object = None

    def to_dict(self):
        return {"status": self.status, "bullet": self.bullet, "n": self.n,
                "certificate": self.certificate.to_dict() if self.certificate else None}


def matching_bullet(radii):
    """Which of the three patterns ``radii`` follows, or ``None``."""
    p = check_admissible(radii)
    inside = p < 1
    if inside.all():
        return "i"
    if inside[0] and not inside[1:].any() and p[-1] < 1 / p[0]:
        return "ii"
    if inside[:-1].all() and not inside[-1] and p[-1] < 1 / p[-2]:
        return "iii"
    return None


def nonexistence_general(radii, omega=DEFAULT_OMEGA):
    """Certificate of nonexistence when one of the three patterns applies.

    Bullet (i) uses the equation of the outermost pair, (ii) that of the
    innermost pair and (iii) that of the second outermost pair.
    """
    p = check_admissible(radii)
    n = 2 * len(p) + 1
    bullet = matching_bullet(p)
    if bullet is None:
        return GeneralVerdict("NotCovered", "", n)
    system = linear_mass_system(p, omega=omega)
    k = len(p)
    if bullet == "i":
        cert = sign_certificate(system, k - 1, f"pair {k}", "lema2",
                                lemmas.inside_pair_expression(p[0], p[-1]))
    elif bullet == "ii":
        cert = sign_certificate(system, 0, "pair 1", "lemma5", lemmas.self_pair_expression(p[0]))
    elif k == 2:
        # the second outermost pair is the unit pair itself
        cert = sign_certificate(system, 0, "pair 1", "lemma5", lemmas.self_pair_expression(p[0]))
    else:
        cert = sign_certificate(system, k - 2, f"pair {k - 1}", "lema2",
                                lemmas.inside_pair_expression(p[0], p[-2]))
    status = "Nonexistence" if cert.valid else "CertificateFailed"
    return GeneralVerdict(status, bullet, n, cert)


def region_verdict(radii):
    """:class:`RegionVerdict` view of :func:`nonexistence_general`."""
    v = nonexistence_general(radii)
    case = f"Bullet_{v.bullet}" if v.bullet else "NotCovered"
    out = RegionVerdict("n", [float(p) for p in radii], case,
                        "none" if v.bullet else "not covered", None)
    out.certificate = v.certificate
    if v.certificate is not None:
        out.exists = False if v.certificate.valid else None
        out.mass_constraint = "none"
    else:
        out.notes.append("no nonexistence pattern applies; existence is not decided")
    return out
