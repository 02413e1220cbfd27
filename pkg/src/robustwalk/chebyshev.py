"""Chebyshev polynomials of the first kind and the damped complex recurrence
behind the robust angle schedules.

Everything here is real/complex scalar math on plain floats and small numpy
arrays.  The key objects are:

* ``chebyshev_t``        -- T_n(x), numerically stable for |x| > 1,
* ``gamma_params``       -- the contraction factor gamma with T_h(1/gamma) = 1/sqrt(eps),
* ``collapse_phases``    -- the phase-difference sequence under which the
  complex three-term recurrence collapses to T_h(x/gamma)/T_h(1/gamma),
* ``quasi_chebyshev``    -- that complex recurrence itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def arccot(y):
    """Inverse cotangent on the (0, pi) branch: arccot(y) = pi/2 - arctan(y).

    Continuous across sign changes of y; arccot(+inf) -> 0, arccot(-inf) -> pi.
    Accepts scalars or arrays.
    """
    return np.pi / 2 - np.arctan(y)


def chebyshev_t(n: int, x):
    """T_n(x) for real x (scalar or array).

    Uses cos(n arccos x) on [-1, 1] and the hyperbolic form
    sgn(x)^n cosh(n arccosh|x|) outside, which stays exact where the
    trigonometric form would go complex.
    """
    if n < 0:
        raise ValueError("polynomial degree must be nonnegative")
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(arr)
    inside = np.abs(arr) <= 1.0
    out[inside] = np.cos(n * np.arccos(arr[inside]))
    if np.any(~inside):
        big = arr[~inside]
        sign = np.where(big > 0, 1.0, (-1.0) ** n)
        out[~inside] = sign * np.cosh(n * np.arccosh(np.abs(big)))
    return float(out[0]) if np.isscalar(x) or np.ndim(x) == 0 else out


@dataclass(frozen=True)
class GammaParams:
    """Contraction factor for a given step count and error floor.

    gamma = 1/cosh(arccosh(1/sqrt(eps))/h) lies in (0, 1] and satisfies
    T_h(1/gamma) = 1/sqrt(eps).
    """

    epsilon: float
    h: int
    gamma: float
    inv_gamma: float


def gamma_params(h: int, epsilon: float) -> GammaParams:
    """Compute gamma for an h-step schedule with error floor epsilon.

    Evaluated entirely in real arithmetic via cosh/arccosh; for epsilon = 1
    gamma is exactly 1.
    """
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"epsilon must be in (0, 1], got {epsilon}")
    if h < 1:
        raise ValueError(f"step count must be positive, got {h}")
    inv_gamma = math.cosh(math.acosh(1.0 / math.sqrt(epsilon)) / h)
    return GammaParams(epsilon=epsilon, h=h, gamma=1.0 / inv_gamma, inv_gamma=inv_gamma)


@dataclass(frozen=True)
class PhaseSequence:
    """Phases zeta_1..zeta_h anchored at zeta_1 = 0, stored with their diffs.

    diffs[k-1] = values[k] - values[k-1] exactly by construction; only the
    differences enter the recurrence below.
    """

    h: int
    diffs: np.ndarray
    values: np.ndarray


def collapse_phases(h: int, gamma: float) -> PhaseSequence:
    """Phase sequence whose differences make the recurrence collapse.

    diffs[k] = (-1)^k pi - 2 arccot(tan(k pi / h) sqrt(1 - gamma^2)) for
    k = 1..h-1.  For odd h, k pi / h never hits pi/2, so tan stays finite.
    """
    if h < 1:
        raise ValueError(f"step count must be positive, got {h}")
    if not 0.0 < gamma <= 1.0:
        raise ValueError(f"gamma must be in (0, 1], got {gamma}")
    k = np.arange(1, h)
    spread = math.sqrt(max(0.0, 1.0 - gamma * gamma))
    diffs = (-1.0) ** k * np.pi - 2.0 * arccot(np.tan(k * np.pi / h) * spread)
    values = np.concatenate(([0.0], np.cumsum(diffs)))
    # re-derive so values[k+1] - values[k] == diffs[k] holds bit-exactly
    return PhaseSequence(h=h, diffs=np.diff(values), values=values)


def quasi_chebyshev(h: int, x: float, phases: PhaseSequence) -> complex:
    """Run the damped complex recurrence to order h and return a_h(x).

    a_0 = 1, a_1 = x, a_k = x (1 + e^{-i d_k}) a_{k-1} - e^{-i d_k} a_{k-2}
    with d_k the k-th phase difference.  With ``collapse_phases(h, gamma)``
    the result equals T_h(x/gamma) / T_h(1/gamma) up to roundoff.
    """
    if h < 3 or h % 2 == 0:
        raise ValueError(f"the collapse identity needs odd h >= 3, got {h}")
    if phases.h != h:
        raise ValueError(f"phase sequence has {phases.h} entries, expected {h}")
    prev = 1.0 + 0.0j
    cur = complex(x)
    for k in range(2, h + 1):
        damp = np.exp(-1j * phases.diffs[k - 2])
        prev, cur = cur, x * (1.0 + damp) * cur - damp * prev
    return cur
