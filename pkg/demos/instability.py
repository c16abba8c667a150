"""Show that certified five-body equilibria are dynamically unstable.

Run with ``python3 demos/instability.py``.
"""

import numpy as np

from curved_nbody import family5, verify
from curved_nbody.geometry import Configuration


def main():
    cfg = family5.configuration(0.5, 3.0, family5.solve_masses_exact(0.5, 3.0))
    fit = verify.fit_angular_velocity(cfg)
    rate = verify.linear_growth_rate(cfg)
    print(f"(0.5, 3): omega {fit.omega:.12g}, growth rate {rate:.3g}, "
          f"period {2 * np.pi / fit.omega:.4g}")
    short = verify.rigid_rotation_check(cfg, periods=0.1)
    print(f"    0.1 period: drift {short.distance_drift:.1e}, passed {short.passed}")
    full = verify.rigid_rotation_check(cfg, periods=1)
    print(f"    1 period: aborted at t={full.t_abort:.3g}, passed {full.passed}")

    ring = Configuration(0.7 * np.exp(2j * np.pi * np.arange(3) / 3), [1, 1, 1])
    report = verify.rigid_rotation_check(ring, omega=verify.fit_angular_velocity(ring).omega)
    print(f"equilateral ring: growth rate {verify.linear_growth_rate(ring):.1e}, "
          f"1 period drift {report.distance_drift:.1e}")


if __name__ == "__main__":
    main()
