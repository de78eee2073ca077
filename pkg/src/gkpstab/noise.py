"""Additive Gaussian noise channels and their reshaping by encoders.

The iid channel adds independent N(0, sigma^2) noise to all 2N
quadratures.  Conjugating the channel by an encoding circuit S turns a
noise draw xi into the reshaped noise z = S^{-1} xi, with covariance
S^{-1} V S^{-T}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .symplectic import SymplecticTransform, inverse

__all__ = [
    "IidNoiseModel",
    "NoiseCovariance",
    "stream_rng",
    "sample_iid",
    "reshape_noise",
    "iid_covariance",
    "propagate_covariance",
    "loss_to_sigma",
    "gkp_sigma_from_delta",
    "gkp_sigma_from_db",
    "gkp_db_from_sigma",
]


@dataclass(frozen=True)
class IidNoiseModel:
    """Iid additive Gaussian noise of strength `sigma` on `n_modes` modes."""

    sigma: float
    n_modes: int

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma}")
        if self.n_modes < 1:
            raise ValueError(f"need at least one mode, got {self.n_modes}")


@dataclass(frozen=True, eq=False)
class NoiseCovariance:
    """Symmetric positive-semidefinite covariance of a 2N quadrature vector."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError(f"covariance must be 2N x 2N, got shape {m.shape}")
        scale = max(1.0, np.abs(m).max())
        if np.abs(m - m.T).max() > 1e-10 * scale:
            raise ValueError("covariance must be symmetric")
        m = 0.5 * (m + m.T)
        if np.linalg.eigvalsh(m).min() < -1e-10 * scale:
            raise ValueError("covariance must be positive semidefinite")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2


def stream_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Generator for an independent, reproducible substream of `seed`.

    Distinct `stream` values give statistically independent generators,
    and the same (seed, stream) pair reproduces the same draws.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream,)))


def sample_iid(model: IidNoiseModel, seed: int, count: int, stream: int = 0) -> np.ndarray:
    """Draw `count` noise vectors of shape (count, 2N) from the iid channel."""
    if count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    gen = stream_rng(seed, stream)
    return gen.normal(0.0, model.sigma, (count, 2 * model.n_modes))


def reshape_noise(encoder: SymplecticTransform, xi: np.ndarray) -> np.ndarray:
    """Reshaped noise z = S^{-1} xi for noise vectors of shape (..., 2N)."""
    x = np.asarray(xi, dtype=float)
    if x.shape[-1] != 2 * encoder.n_modes:
        raise ValueError(
            f"noise length {x.shape[-1]} does not match {encoder.n_modes} modes"
        )
    return x @ inverse(encoder).matrix.T


def iid_covariance(model: IidNoiseModel) -> NoiseCovariance:
    """Covariance sigma^2 I of the iid channel."""
    return NoiseCovariance(model.sigma**2 * np.eye(2 * model.n_modes))


def propagate_covariance(encoder: SymplecticTransform, cov: NoiseCovariance) -> NoiseCovariance:
    """Covariance of the reshaped noise, S^{-1} V S^{-T}."""
    if cov.n_modes != encoder.n_modes:
        raise ValueError(
            f"covariance is for {cov.n_modes} modes, encoder for {encoder.n_modes}"
        )
    t = inverse(encoder).matrix
    return NoiseCovariance(t @ cov.matrix @ t.T)


def loss_to_sigma(gamma: float) -> float:
    """Noise strength of the additive channel equivalent to loss `gamma`.

    A pure-loss channel of transmissivity 1 - gamma, pre-amplified by a
    quantum-limited amplifier of gain 1/(1 - gamma), acts as the iid
    additive Gaussian channel with sigma = sqrt(gamma).
    """
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"loss must lie in [0, 1), got {gamma}")
    return math.sqrt(gamma)


def gkp_sigma_from_delta(delta: float) -> float:
    """GKP noise standard deviation of a width-`delta` normalizable GKP state."""
    if delta < 0:
        raise ValueError(f"delta must be nonnegative, got {delta}")
    e = math.exp(-delta)
    return math.sqrt((1.0 - e) / (1.0 + e))


def gkp_sigma_from_db(squeeze_db: float) -> float:
    """GKP noise standard deviation for a squeezing level in dB.

    The squeezing of a GKP state is s = -10 log10(2 sigma_gkp^2), so
    infinite squeezing is the noiseless limit sigma_gkp = 0.
    """
    if math.isinf(squeeze_db):
        if squeeze_db > 0:
            return 0.0
        raise ValueError("squeezing must be finite or +inf")
    return math.sqrt(10.0 ** (-squeeze_db / 10.0) / 2.0)


def gkp_db_from_sigma(sigma_gkp: float) -> float:
    """Squeezing level in dB of a GKP state with noise `sigma_gkp`."""
    if sigma_gkp < 0:
        raise ValueError(f"sigma_gkp must be nonnegative, got {sigma_gkp}")
    if sigma_gkp == 0:
        return math.inf
    return -10.0 * math.log10(2.0 * sigma_gkp**2)
