"""Certificates of nonexistence and region verdicts."""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog


@dataclass
class Certificate:
    """One reduced equation ``lhs = sum_k coefficient_k * mass_k`` that cannot hold.

    ``lhs`` collects every mass-independent term (the unit inner pair
    included). When ``lhs > 0`` and every coefficient is negative, the right
    side is negative for all positive masses, so its supremum over positive
    masses, ``rhs_supremum = 0``, lies strictly below ``lhs``.
    """

    equation: str
    lhs: float
    rhs_coefficients: dict
    lemma: str = ""
    lemma_value: float = float("nan")
    rhs_supremum: float = 0.0
    #: row weights when the equation is a combination of several
    weights: list = None

    @property
    def valid(self):
        coefs = np.array(list(self.rhs_coefficients.values()), dtype=float)
        if self.lhs > 0:
            return bool(np.all(coefs < 0))
        if self.lhs < 0:
            return bool(np.all(coefs > 0))
        return False

    def to_dict(self):
        return {
            "equation": self.equation,
            "lhs": self.lhs,
            "rhs_coefficients": dict(self.rhs_coefficients),
            "rhs_supremum": self.rhs_supremum if self.lhs > 0 else None,
            "rhs_infimum": self.rhs_supremum if self.lhs < 0 else None,
            "lemma": self.lemma,
            "lemma_value": self.lemma_value,
            "weights": self.weights,
            "valid": self.valid,
        }


def sign_certificate(system, row, label, lemma="", lemma_value=float("nan")):
    """Certificate built from row ``row`` of a :class:`LinearMassSystem`."""
    coefs = {name: float(system.matrix[row, k]) for k, name in enumerate(system.unknowns)}
    return Certificate(label, float(system.const[row]), coefs, lemma, float(lemma_value))


def combination_certificate(system, label="weighted sum of equations"):
    """Certificate from a weighted sum of all equations of ``system``.

    By Farkas' lemma, ``const = matrix @ x`` has no solution with ``x >= 0``
    exactly when some weights ``w`` give ``w @ const > 0`` and
    ``w @ matrix <= 0``. With rows normalised and ``|w_i| <= 1``, a linear
    program maximises the margin ``d`` in ``w @ const >= d`` and
    ``w @ matrix <= -d``; the result is ``None`` unless ``d > 0``.
    """
    a = np.asarray(system.matrix, dtype=float)
    b = np.asarray(system.const, dtype=float)
    rows, cols = a.shape
    scale = np.abs(np.c_[a, b]).max(axis=1)
    scale = np.where(scale > 0, scale, 1.0)
    an, bn = a / scale[:, None], b / scale
    # variables (w, d): maximise d
    res = linprog(np.r_[np.zeros(rows), -1.0],
                  A_ub=np.r_[np.c_[-bn[None, :], 1.0], np.c_[an.T, np.ones(cols)]],
                  b_ub=np.zeros(cols + 1),
                  bounds=[(-1.0, 1.0)] * rows + [(None, 1.0)], method="highs")
    if res.status != 0 or not res.x[-1] > 0:
        return None
    w = res.x[:rows] / scale
    coefs = {name: float(v) for name, v in zip(system.unknowns, w @ a)}
    cert = Certificate(label, float(w @ b), coefs, "Farkas", weights=[float(v) for v in w])
    return cert if cert.valid else None


@dataclass
class RegionVerdict:
    """Classification of a position tuple and what is known there.

    ``paper_claim`` is the existence statement attached to the case by the
    classification under test; ``exists`` is this library's own finding:
    ``False`` with a certificate, ``True`` when a certified positive mass
    solution was found, ``False`` when the unique exact solution is not
    positive, and ``None`` when nothing is decided.
    """

    family: str
    positions: list
    case: str
    paper_claim: str
    exists: object
    mass_constraint: str = ""
    certificate: object = None
    solution: object = None
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "family": self.family,
            "positions": list(self.positions),
            "case": self.case,
            "paper_claim": self.paper_claim,
            "exists": self.exists,
            "mass_constraint": self.mass_constraint,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "solution": self.solution.to_dict() if self.solution else None,
            "notes": list(self.notes),
        }
