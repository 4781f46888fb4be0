"""Asymptotic enumeration of dense regular graphs."""

from __future__ import annotations

import math

from factors.exceptions import DegenerateDensityError


def mw_count_estimate(n: int, d: int) -> float:
    """Natural logarithm of the main term of the dense regular-graph count.

    With ``l = d/(n-1)`` the estimate is
    ``sqrt(2) * (2*pi*l**(d+1)*(1-l)**(n-d)*n)**(-n/2) * exp((-1 + 10*l - 10*l**2) / (12*l*(1-l)))``,
    evaluated in log space since the count overflows any float long before ``n = 20``.

    Args:
        n (int): Vertex count.
        d (int): Degree, ``1 <= d <= n-2``.

    Returns
    -------
        float: ``log`` of the estimate.
    """
    if n < 3 or not 1 <= d <= n - 2:  # noqa: PLR2004
        msg = f"Density d/(n-1) must lie strictly between 0 and 1, got n={n} d={d}"
        raise DegenerateDensityError(msg)
    lam = d / (n - 1)
    inner = math.log(2 * math.pi * n) + (d + 1) * math.log(lam) + (n - d) * math.log1p(-lam)
    correction = (-1 + 10 * lam - 10 * lam**2) / (12 * lam * (1 - lam))
    return 0.5 * math.log(2) - n / 2 * inner + correction


def mw_ratio_parameter(n: int, d: int) -> float:
    """``r = sqrt(l/(1-l))`` for ``l = d/(n-1)``, reported next to the estimate."""
    lam = d / (n - 1)
    return math.sqrt(lam / (1 - lam))
