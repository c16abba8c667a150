"""Collinear relative equilibria of the curved n-body problem on the sphere.

Positions are stereographic coordinates on the unit-curvature sphere; the
subpackages cover the geometry and dynamics, the algebraic equilibrium
conditions, the five-, seven- and odd-n-body families, and verification.
"""

from .conditions import (ConditionResidual, MassSolution, PairKernel, collinear_reduce,
                         condition_residual, pair_kernel)
from .dynamics import (IntegrationSettings, State, acceleration, integrate, kinetic_energy,
                       rigid_rotation_state, total_energy)
from .errors import *  # noqa: F401,F403
from .geometry import (Body, Configuration, geodesic_cos, geodesic_distance, potential,
                       potential_gradient_conj)

__version__ = "0.1.0"
