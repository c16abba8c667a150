"""Sign lemmas behind the nonexistence results.

Each lemma is an inequality between rational functions of the radii; the
functions here evaluate both the full expression and the polynomial pieces
used to prove it, so the pieces can be audited independently.
"""

import numpy as np


def inside_pair_expression(a, r):
    """Positive left side for the outer body of an inside pair ``0<a<r<1``.

    ``(a^2+1)^2/2 [1/((ar+1)^2 (a-r)^2) + 1/((r+a)^2 (ar-1)^2)] - (1-r^2) r/(1+r^2)^4``
    """
    a = np.asarray(a, dtype=float)
    r = np.asarray(r, dtype=float)
    bracket = 1.0 / ((a * r + 1) ** 2 * (a - r) ** 2) + 1.0 / ((r + a) ** 2 * (a * r - 1) ** 2)
    return 0.5 * (a * a + 1) ** 2 * bracket - (1 - r * r) * r / (1 + r * r) ** 4


def inside_pair_lower_bound(a, r):
    """The bound ``H(a, r)``: the expression with its first bracket term dropped."""
    a = np.asarray(a, dtype=float)
    r = np.asarray(r, dtype=float)
    return (0.5 * (a * a + 1) ** 2 / ((a * r - 1) ** 2 * (a + r) ** 2)
            - (1 - r * r) * r / (1 + r * r) ** 4)


def lower_bound_argmin(r):
    """Critical point ``a = (1 - r) / (1 + r)`` of ``H`` in ``a``."""
    r = np.asarray(r, dtype=float)
    return (1 - r) / (1 + r)


def lower_bound_minimum(r):
    """``H`` at its critical point, ``(r^2+r+2)(2r^2-r+1)/(r^2+1)^4``."""
    r = np.asarray(r, dtype=float)
    return (r * r + r + 2) * (2 * r * r - r + 1) / (r * r + 1) ** 4


def self_pair_expression(x):
    """``-(1-x^2) x/(1+x^2)^4 + (x^2+1)^2 / (8 (x^2-1)^2 x^2)``, positive on (0, 1)."""
    x = np.asarray(x, dtype=float)
    return -(1 - x * x) * x / (1 + x * x) ** 4 + (x * x + 1) ** 2 / (8 * (x * x - 1) ** 2 * x * x)


def self_pair_factors(x):
    """Factors with ``expression = f g / (8 x^2 (x^2-1)^2 (x^2+1)^4)``, ``g = h + D``."""
    x = np.asarray(x, dtype=float)
    f = x ** 4 + 2 * x ** 3 + 2 * x ** 2 - 2 * x + 1
    h = x ** 6 * (x * x - 2 * x + 8)
    d = -2 * x ** 5 - 2 * x ** 4 + 2 * x ** 3 + 8 * x ** 2 + 2 * x + 1
    return {"f": f, "g": h + d, "h": h, "D": d}


def self_pair_D_root():
    """The single positive root of ``D`` (it lies in (1, 2))."""
    roots = np.roots([-2, -2, 2, 8, 2, 1])
    real = roots[np.abs(roots.imag) < 1e-12].real
    return float(real[real > 0][0])


def outside_self_pair_expression(x):
    """``(x^2-1) x/(1+x^2)^4 - (x^2+1)^2/(8 (x^2-1)^2 x^2)``, negative for x > 1."""
    x = np.asarray(x, dtype=float)
    return (x * x - 1) * x / (1 + x * x) ** 4 - (x * x + 1) ** 2 / (8 * (x * x - 1) ** 2 * x * x)


def outside_self_pair_factors(x):
    """Factors with ``expression = -f g / (8 x^2 (x^2-1)^2 (x^2+1)^4)``.

    ``g = x^8 + 2x^7 + 8x^6 + h`` with ``h = 2 x D + 1`` and
    ``D = x^4 - x^3 - x^2 + 4x - 1``.
    """
    x = np.asarray(x, dtype=float)
    f = x ** 4 - 2 * x ** 3 + 2 * x ** 2 + 2 * x + 1
    d = x ** 4 - x ** 3 - x ** 2 + 4 * x - 1
    h = 2 * x * d + 1
    g = x ** 8 + 2 * x ** 7 + 8 * x ** 6 + h
    return {"f": f, "g": g, "h": h, "D": d}


def outside_D_critical_point():
    """Only real critical point of ``D``, approximately -0.9334."""
    roots = np.roots([4, -3, -2, 4])
    return float(roots[np.abs(roots.imag) < 1e-12].real[0])


def pair_difference_kernel(p, q):
    """``(p^2+1)^2 [1/((1+pq)^2 (p-q)^2) - 1/((pq-1)^2 (p+q)^2)]``.

    Coefficient (times 2) of the pair at radius ``p`` in the equation of the
    body at ``q``. Negative when ``q < 1 < p`` and ``pq < 1``.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return (p * p + 1) ** 2 * (1.0 / ((1 + p * q) ** 2 * (p - q) ** 2)
                               - 1.0 / ((p * q - 1) ** 2 * (p + q) ** 2))


def pair_difference_factored(p, q):
    """Closed form of :func:`pair_difference_kernel`.

    ``4 p q (p^2+1)^2 (p^2-1)(q^2-1) / ((pq+1)^2 (p^2-q^2)^2 (pq-1)^2)``
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return (4 * p * q * (p * p + 1) ** 2 * (p * p - 1) * (q * q - 1)
            / ((p * q + 1) ** 2 * (p * p - q * q) ** 2 * (p * q - 1) ** 2))
