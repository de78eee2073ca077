"""Recovery maps estimating the logical noise from reshaped syndromes.

Every decoder consumes the reshaped noise z = S^{-1} xi of one or more
trials (shape (..., 2N)) and returns the residual logical quadrature
noise after the correction displacements.  GKP ancilla syndromes pass
through modular_measure, so finitely squeezed ancillas and modular
wrap-around are both accounted for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import codes
from .modular import modular_measure
from .symplectic import inverse

__all__ = [
    "DecodeOutcome",
    "decode_gaussian_repetition",
    "decode_gkp_repetition",
    "mmse_coefficients",
    "decode_gkp_tms",
    "decode_gkp_squeezed_repetition",
    "gaussian_repetition_decoder",
    "gkp_repetition_decoder",
    "gkp_tms_decoder",
    "gkp_squeezed_repetition_decoder",
]


@dataclass(frozen=True)
class DecodeOutcome:
    """Residual logical noise (position, momentum) of the data mode."""

    xi_q: np.ndarray
    xi_p: np.ndarray


def _as_trials(z, n_modes: int) -> np.ndarray:
    x = np.asarray(z, dtype=float)
    if x.shape[-1] != 2 * n_modes:
        raise ValueError(
            f"syndrome length {x.shape[-1]} does not match {n_modes} modes"
        )
    return x


def decode_gaussian_repetition(z, n_modes: int) -> DecodeOutcome:
    """Maximum-likelihood recovery for the Gaussian repetition code.

    Position-eigenstate ancillas expose the syndromes z_q^(k) exactly;
    correcting by minus their sum over n leaves the mean of the n
    position noises, with variance sigma^2/n.  Nothing can be measured
    about momentum, so the accumulated ancilla momentum noise in
    z_p^(1) is returned unchanged.
    """
    x = _as_trials(z, n_modes)
    xi_q = x[..., 0] + x[..., 2::2].sum(axis=-1) / n_modes
    xi_p = x[..., 1]
    return DecodeOutcome(xi_q=xi_q, xi_p=xi_p)


def decode_gkp_repetition(z, sigma_gkp: float = 0.0, rng=None) -> DecodeOutcome:
    """Closed-form recovery for the two-mode GKP repetition code.

    The ancilla syndromes are read modulo sqrt(2*pi); the position
    correction applies half the measured value, the momentum correction
    subtracts it.
    """
    x = _as_trials(z, 2)
    gen = np.random.default_rng(rng)
    m_q = modular_measure(x[..., 2], sigma_gkp, gen)
    m_p = modular_measure(x[..., 3], sigma_gkp, gen)
    return DecodeOutcome(xi_q=x[..., 0] + 0.5 * m_q, xi_p=x[..., 1] - m_p)


def mmse_coefficients(gain: float, sigma: float, sigma_gkp: float = 0.0) -> tuple[float, float]:
    """Minimum-mean-square-error rescaling for the two-mode squeezing code.

    Returns (c_q, c_p) such that the estimates are
    z_q^(1) - c_q * m_q and z_p^(1) - c_p * m_p, with m the modular
    syndrome measurements.  The magnitude is

        c = 2 sqrt(G(G-1)) sigma^2 / ((2G-1) sigma^2 + 2 sigma_gkp^2)

    which tends to 2 sqrt(G(G-1)) / (2G-1) < 1 for noiseless ancillas.
    """
    if gain < 1.0:
        raise ValueError(f"gain must be >= 1, got {gain}")
    if sigma < 0 or sigma_gkp < 0:
        raise ValueError("noise strengths must be nonnegative")
    num = 2.0 * math.sqrt(gain * (gain - 1.0))
    if sigma == 0.0 and sigma_gkp == 0.0:
        c = num / (2.0 * gain - 1.0)
    else:
        c = num * sigma**2 / ((2.0 * gain - 1.0) * sigma**2 + 2.0 * sigma_gkp**2)
    return -c, c


def decode_gkp_tms(z, gain: float, sigma: float, sigma_gkp: float = 0.0, rng=None) -> DecodeOutcome:
    """MMSE recovery for the GKP two-mode squeezing code."""
    x = _as_trials(z, 2)
    c_q, c_p = mmse_coefficients(gain, sigma, sigma_gkp)
    gen = np.random.default_rng(rng)
    m_q = modular_measure(x[..., 2], sigma_gkp, gen)
    m_p = modular_measure(x[..., 3], sigma_gkp, gen)
    return DecodeOutcome(xi_q=x[..., 0] - c_q * m_q, xi_p=x[..., 1] - c_p * m_p)


@lru_cache(maxsize=64)
def _squeezed_chain(n_modes: int, lam: float):
    """Precompute the measurement-chain coefficients for the squeezed code.

    Reads them off the inverse encoder: the ancilla position rows must be
    bidiagonal (pairing each mode with its predecessor) and the momentum
    rows upper triangular, which the recursion guarantees.
    """
    enc = codes.gkp_squeezed_repetition(n_modes, lam).encoder
    t = inverse(enc).matrix
    n = n_modes
    tq = t[0::2, 0::2]
    tp = t[1::2, 1::2]
    scale = 1e-9 * lam ** (n - 1)
    if np.abs(t[0::2, 1::2]).max() > scale or np.abs(t[1::2, 0::2]).max() > scale:
        raise RuntimeError("inverse encoder mixes position and momentum")
    expect_zero = max(np.abs(np.triu(tq[1:, 1:], 1)).max(), np.abs(tq[0, 1:]).max())
    for k in range(1, n):
        row = np.abs(tq[k, : k - 1])
        expect_zero = max(expect_zero, row.max() if row.size else 0.0)
    if expect_zero > scale or np.abs(np.tril(tp, -1)).max() > scale:
        raise RuntimeError("inverse encoder lacks the expected chain structure")
    # position estimate: coefficients c_k with sum_k c_k z_q^(k)
    # reproducing z_q^(1) while the intermediate noises telescope away
    coeffs = np.zeros(n)
    c = tq[0, 0] / tq[1, 0]
    coeffs[1] = c
    for k in range(1, n - 1):
        c = -c * tq[k, k] / tq[k + 1, k]
        coeffs[k + 1] = c
    return coeffs, tp


def _decode_squeezed(x, n_modes, coeffs, tp, sigma_gkp, gen):
    est = np.zeros(x.shape[:-1])
    for k in range(1, n_modes):
        est = est + coeffs[k] * modular_measure(x[..., 2 * k], sigma_gkp, gen)
    xi_q = x[..., 0] - est
    # momentum chain runs backwards, subtracting transferred noise from
    # the later modes before each measurement
    estimates = [None] * n_modes
    for k in range(n_modes - 1, 0, -1):
        acc = x[..., 2 * k + 1]
        for j in range(k + 1, n_modes):
            acc = acc - tp[k, j] * estimates[j]
        estimates[k] = modular_measure(acc, sigma_gkp, gen) / tp[k, k]
    xi_p = x[..., 1]
    for j in range(1, n_modes):
        xi_p = xi_p - tp[0, j] * estimates[j]
    return DecodeOutcome(xi_q=xi_q, xi_p=xi_p)


def decode_gkp_squeezed_repetition(
    z, n_modes: int, lam: float, sigma_gkp: float = 0.0, rng=None
) -> DecodeOutcome:
    """Sequential chain recovery for the N-mode GKP squeezed repetition code.

    Ancilla positions are measured in mode order; their weighted sum
    estimates the amplified data position noise, leaving a residual of
    order sigma/lam^(N-1).  Ancilla momenta are measured from the last
    mode backwards, undoing the transferred noise before each
    measurement, which leaves the same residual on momentum.
    """
    x = _as_trials(z, n_modes)
    coeffs, tp = _squeezed_chain(n_modes, lam)
    gen = np.random.default_rng(rng)
    return _decode_squeezed(x, n_modes, coeffs, tp, sigma_gkp, gen)


def gaussian_repetition_decoder(n_modes: int):
    """Decoder callable for monte_carlo.run."""

    def dec(z, rng):
        return decode_gaussian_repetition(z, n_modes)

    return dec


def gkp_repetition_decoder(sigma_gkp: float = 0.0):
    def dec(z, rng):
        return decode_gkp_repetition(z, sigma_gkp, rng)

    return dec


def gkp_tms_decoder(gain: float, sigma: float, sigma_gkp: float = 0.0):
    def dec(z, rng):
        return decode_gkp_tms(z, gain, sigma, sigma_gkp, rng)

    return dec


def gkp_squeezed_repetition_decoder(n_modes: int, lam: float, sigma_gkp: float = 0.0):
    coeffs, tp = _squeezed_chain(n_modes, lam)

    def dec(z, rng):
        x = _as_trials(z, n_modes)
        return _decode_squeezed(x, n_modes, coeffs, tp, sigma_gkp, np.random.default_rng(rng))

    return dec
