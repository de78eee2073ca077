"""Output-noise statistics of the decoders, computed without sampling.

The logical noise distributions are lattice sums of Gaussian pieces:
the modular syndrome measurement partitions the real line into cells of
width sqrt(2*pi), and each cell contributes a shifted Gaussian weighted
by the probability of landing in it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import erf, erfc, ndtr

from .modular import MODULAR_PERIOD

__all__ = [
    "gaussian_pdf",
    "cell_masses",
    "MixturePdf",
    "tms_mixture",
    "tms_variance",
    "tms_variance_erfc_approx",
    "tms_asymptotic_optimum",
    "tms_variance_noisy_gkp",
    "gkp_repetition_pdfs",
    "gkp_repetition_stds",
]

_P = MODULAR_PERIOD


def gaussian_pdf(x, sigma: float):
    """Density of N(0, sigma^2) at x."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    x = np.asarray(x, dtype=float)
    return np.exp(-(x * x) / (2.0 * sigma * sigma)) / math.sqrt(2.0 * math.pi * sigma * sigma)


def _n_max(spread: float) -> int:
    # keep cells out to 8 standard deviations so the discarded lattice
    # mass stays below the 1e-10 budget of the mixture weights
    return max(5, int(math.ceil(8.0 * spread / _P)) + 1)


def cell_masses(sigma: float, n_max: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Masses of N(0, sigma^2) on the measurement cells.

    Cell n is [(n - 1/2) sqrt(2 pi), (n + 1/2) sqrt(2 pi)].  Returns the
    cell indices and their probabilities, truncated where the Gaussian
    tail is negligible.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if n_max is None:
        n_max = _n_max(sigma)
    ns = np.arange(-n_max, n_max + 1)
    denom = math.sqrt(2.0) * sigma
    hi = erf((ns + 0.5) * _P / denom)
    lo = erf((ns - 0.5) * _P / denom)
    return ns, 0.5 * (hi - lo)


@dataclass(frozen=True, eq=False)
class MixturePdf:
    """Mixture of equal-width Gaussians at lattice shifts.

    Weights are probabilities summing to one up to the truncation
    budget; every component has standard deviation `base_sigma`.
    """

    weights: np.ndarray
    shifts: np.ndarray
    base_sigma: float

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        s = np.asarray(self.shifts, dtype=float)
        if w.shape != s.shape or w.ndim != 1 or w.size == 0:
            raise ValueError("weights and shifts must be matching 1-d arrays")
        if np.any(w < 0):
            raise ValueError("mixture weights must be nonnegative")
        total = w.sum()
        if not (1.0 - 1e-10 <= total <= 1.0 + 1e-12):
            raise ValueError(f"mixture weights sum to {total}, expected 1")
        if self.base_sigma <= 0:
            raise ValueError(f"base_sigma must be positive, got {self.base_sigma}")
        w.flags.writeable = False
        s.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "shifts", s)

    def pdf(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        comp = gaussian_pdf(x[..., None] - self.shifts, self.base_sigma)
        out = comp @ self.weights
        return out if out.size > 1 else float(out[0])

    def cdf(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        comp = ndtr((x[..., None] - self.shifts) / self.base_sigma)
        out = comp @ self.weights
        return out if out.size > 1 else float(out[0])

    def mean(self) -> float:
        return float(self.weights @ self.shifts)

    def variance(self) -> float:
        m = self.mean()
        second = self.weights @ (self.base_sigma**2 + self.shifts**2)
        return float(second - m * m)


def tms_mixture(sigma: float, gain: float) -> MixturePdf:
    """Logical noise distribution of the two-mode squeezing code.

    Both quadratures follow the same law: a Gaussian of width
    sigma/sqrt(2G-1) displaced to mu_n = 2 sqrt(G(G-1))/(2G-1) *
    sqrt(2 pi) n with probability given by the cell masses of the
    amplified syndrome.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if gain < 1.0:
        raise ValueError(f"gain must be >= 1, got {gain}")
    if gain == 1.0:
        return MixturePdf(np.array([1.0]), np.array([0.0]), sigma)
    spread = math.sqrt(2.0 * gain - 1.0) * sigma
    ns, w = cell_masses(spread)
    keep = w >= 1e-16
    keep[ns == 0] = True
    ns, w = ns[keep], w[keep]
    mu = (2.0 * math.sqrt(gain * (gain - 1.0)) / (2.0 * gain - 1.0)) * _P * ns
    return MixturePdf(w, mu, sigma / math.sqrt(2.0 * gain - 1.0))


def tms_variance(sigma: float, gain: float) -> float:
    """Exact logical noise variance of the two-mode squeezing code."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if gain < 1.0:
        raise ValueError(f"gain must be >= 1, got {gain}")
    if gain == 1.0:
        return sigma * sigma
    two_g = 2.0 * gain - 1.0
    ns, w = cell_masses(math.sqrt(two_g) * sigma)
    mu = (2.0 * math.sqrt(gain * (gain - 1.0)) / two_g) * _P * ns
    return sigma * sigma / two_g + float(w @ (mu * mu))


def tms_variance_erfc_approx(sigma: float, gain: float) -> float:
    """Two-term approximation keeping only the first displaced cells.

    Accurate to about a percent whenever the wrap probability is small;
    handy for the closed-form optimum analysis.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if gain < 1.0:
        raise ValueError(f"gain must be >= 1, got {gain}")
    if gain == 1.0:
        return sigma * sigma
    two_g = 2.0 * gain - 1.0
    tail = erfc(math.sqrt(math.pi) / (2.0 * math.sqrt(two_g) * sigma))
    return sigma * sigma / two_g + (8.0 * math.pi * gain * (gain - 1.0) / two_g**2) * tail


def tms_asymptotic_optimum(sigma: float) -> tuple[float, float]:
    """Small-sigma limits of the optimal gain and achievable noise.

    Returns (gain, sigma_L).  Valid when log(pi^1.5 / (2 sigma^4)) is
    positive, i.e. for sigma well below 1.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    big_l = math.log(math.pi**1.5 / (2.0 * sigma**4))
    if big_l <= 0:
        raise ValueError(f"asymptotic form invalid for sigma = {sigma}")
    gain = math.pi / (8.0 * sigma * sigma) / big_l + 0.5
    sigma_l = (2.0 * sigma * sigma / math.sqrt(math.pi)) * math.sqrt(big_l)
    return gain, sigma_l


def tms_variance_noisy_gkp(sigma: float, sigma_gkp: float, gain: float) -> float:
    """Logical noise variance with finitely squeezed GKP ancillas.

    Averages the squared MMSE residual over the joint law of the
    amplified syndrome and the GKP measurement noise.  The inner
    Gaussian average is carried out exactly, leaving per-cell moments of
    the summed variable, which have erf closed forms.
    """
    if sigma < 0 or sigma_gkp < 0:
        raise ValueError("noise strengths must be nonnegative")
    if gain < 1.0:
        raise ValueError(f"gain must be >= 1, got {gain}")
    if sigma == 0.0:
        return 0.0
    two_g = 2.0 * gain - 1.0
    s2 = two_g * sigma * sigma
    t2 = 2.0 * sigma_gkp * sigma_gkp
    a_const = sigma * sigma / two_g
    denom = two_g * sigma * sigma + 2.0 * sigma_gkp * sigma_gkp
    c = 2.0 * math.sqrt(gain * (gain - 1.0)) * sigma * sigma / denom
    d = 2.0 * math.sqrt(gain * (gain - 1.0)) * 2.0 * sigma_gkp * sigma_gkp / (two_g * denom)
    u2 = s2 + t2
    u = math.sqrt(u2)
    rho = s2 / u2
    tau2 = s2 * t2 / u2
    w = c + d
    alpha = c - w * rho
    k_const = a_const + w * w * tau2

    ns = np.arange(-_n_max(u), _n_max(u) + 1)
    beta = c * _P * ns
    lo = (ns - 0.5) * _P
    hi = (ns + 0.5) * _P
    phi_lo = gaussian_pdf(lo, u)
    phi_hi = gaussian_pdf(hi, u)
    m0 = ndtr(hi / u) - ndtr(lo / u)
    m1 = u2 * (phi_lo - phi_hi)
    m2 = u2 * m0 - u2 * (hi * phi_hi - lo * phi_lo)
    total = np.sum((k_const + beta * beta) * m0 + alpha * alpha * m2 - 2.0 * alpha * beta * m1)
    if not np.isfinite(total):
        raise ArithmeticError(
            f"variance evaluation failed for sigma={sigma}, sigma_gkp={sigma_gkp}, gain={gain}"
        )
    return float(total)


def gkp_repetition_pdfs(xi, sigma: float) -> tuple[np.ndarray, np.ndarray]:
    """Densities of the logical (position, momentum) noise of the
    two-mode GKP repetition code, evaluated at the points `xi`.

    The position density couples the difference of the two position
    noises to the measurement cell; integrating out the in-cell value
    leaves erf-weighted Gaussians at half-period spacing.  The momentum
    density is a plain cell-mass mixture at full-period spacing.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    x = np.atleast_1d(np.asarray(xi, dtype=float))
    half = 0.5 * _P
    n_max = max(5, int(math.ceil((2.0 * np.abs(x).max() + 16.0 * sigma) / _P)) + 1)
    ns = np.arange(-n_max, n_max + 1)
    shift = _P * ns
    gate = erf((shift + half) / (2.0 * sigma)) - erf((shift - half) / (2.0 * sigma))
    envelope = np.exp(-((2.0 * x[:, None] + shift) ** 2) / (4.0 * sigma * sigma))
    q_vals = (envelope * gate).sum(axis=1) / (2.0 * math.sqrt(math.pi) * sigma)

    _, w = cell_masses(sigma, n_max)
    p_vals = (gaussian_pdf(x[:, None] - shift, sigma) * w).sum(axis=1)
    if np.isscalar(xi) or np.ndim(xi) == 0:
        return float(q_vals[0]), float(p_vals[0])
    return q_vals, p_vals


def gkp_repetition_stds(sigma: float) -> tuple[float, float]:
    """Standard deviations of the two densities above, by numeric moments."""
    n_max = max(5, int(math.ceil(16.0 * sigma / _P)) + 1)
    reach_q = 0.5 * _P * (n_max + 1) + 12.0 * sigma
    reach_p = _P * (n_max + 1) + 12.0 * sigma
    centers_q = [0.5 * _P * n for n in range(-n_max, n_max + 1)]
    centers_p = [_P * n for n in range(-n_max, n_max + 1)]

    def q_pdf(u):
        return gkp_repetition_pdfs(u, sigma)[0]

    def p_pdf(u):
        return gkp_repetition_pdfs(u, sigma)[1]

    out = []
    for pdf, reach, centers in ((q_pdf, reach_q, centers_q), (p_pdf, reach_p, centers_p)):
        norm, _ = quad(pdf, -reach, reach, points=centers, limit=50 + 8 * len(centers))
        m2, _ = quad(lambda u: u * u * pdf(u), -reach, reach, points=centers,
                     limit=50 + 8 * len(centers))
        if abs(norm - 1.0) > 1e-6:
            raise ArithmeticError(f"pdf normalization drifted to {norm} at sigma={sigma}")
        out.append(math.sqrt(m2 / norm))
    return out[0], out[1]
