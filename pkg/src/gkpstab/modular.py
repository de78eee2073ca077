"""Centered modular reduction and modular quadrature measurement.

GKP stabilizer measurements reveal a quadrature only modulo sqrt(2*pi).
The reduction used here is centered: the result always lies in
[-s/2, s/2] for period s.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["MODULAR_PERIOD", "centered_mod", "modular_measure"]

# Period of the modular quadrature measurement for square-lattice GKP
# ancillas.
MODULAR_PERIOD = math.sqrt(2.0 * math.pi)


def centered_mod(value, period: float = MODULAR_PERIOD):
    """Reduce `value` to the centered interval [-period/2, period/2].

    Returns value - n*period where n is the integer minimizing the
    magnitude of the result.  Exact ties (value at an odd half-multiple
    of the period) pick the n of smaller magnitude, so the result
    carries the sign of `value`.

    Accepts scalars or arrays; period must be positive.
    """
    if period <= 0:
        raise ValueError(f"period must be positive, got {period}")
    x = np.asarray(value, dtype=float) / period
    # round-half-toward-zero keeps ties at the smaller |n|
    n = np.where(x >= 0, np.ceil(x - 0.5), np.floor(x + 0.5))
    out = np.asarray(value, dtype=float) - n * period
    if np.isscalar(value) or np.ndim(value) == 0:
        return float(out)
    return out


def modular_measure(value, sigma_gkp: float = 0.0, rng=None):
    """Simulate a modular quadrature measurement of `value`.

    A noiseless measurement returns centered_mod(value).  With finitely
    squeezed GKP ancillas both the ancilla preparation and the homodyne
    readout contribute, so Gaussian noise of variance 2*sigma_gkp**2 is
    added before the reduction.

    Args:
        value: true quadrature value(s), scalar or array.
        sigma_gkp: per-quadrature GKP noise standard deviation (>= 0).
        rng: seed or numpy Generator used when sigma_gkp > 0.
    """
    if sigma_gkp < 0:
        raise ValueError(f"sigma_gkp must be nonnegative, got {sigma_gkp}")
    if sigma_gkp == 0:
        return centered_mod(value)
    gen = np.random.default_rng(rng)
    noise = gen.normal(0.0, math.sqrt(2.0) * sigma_gkp, np.shape(value))
    return centered_mod(np.asarray(value, dtype=float) + noise)
