"""Symplectic matrices for Gaussian circuits on N bosonic modes.

Quadratures are ordered mode by mode, (q1, p1, ..., qN, pN), with
hbar = 1 so the vacuum variance of each quadrature is 1/2.  A Gaussian
unitary acts on the quadrature vector x as x -> S x, and composing
circuits multiplies matrices in operator order: the rightmost factor is
applied first, S_{AB} = S_A S_B.

Mode indices are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SymplecticTransform",
    "omega",
    "identity",
    "sum_gate",
    "single_mode_squeeze",
    "two_mode_squeeze",
    "beam_splitter",
    "compose",
    "inverse",
    "apply",
    "direct_sum",
    "is_symplectic",
]


@dataclass(frozen=True, eq=False)
class SymplecticTransform:
    """A symplectic matrix together with the number of modes it acts on.

    The matrix is 2N x 2N and satisfies S Omega S^T = Omega up to
    rounding.  Instances are immutable; the wrapped array is read-only.
    """

    n_modes: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.n_modes < 1:
            raise ValueError(f"need at least one mode, got {self.n_modes}")
        m = np.array(self.matrix, dtype=float)
        if m.shape != (2 * self.n_modes, 2 * self.n_modes):
            raise ValueError(
                f"matrix shape {m.shape} does not match {self.n_modes} modes"
            )
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix entries must be finite")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def __repr__(self):
        return f"SymplecticTransform(n_modes={self.n_modes})"


def omega(n_modes: int) -> np.ndarray:
    """Symplectic form for `n_modes` modes in (q1, p1, ..., qN, pN) order."""
    w = np.zeros((2 * n_modes, 2 * n_modes))
    for j in range(n_modes):
        w[2 * j, 2 * j + 1] = 1.0
        w[2 * j + 1, 2 * j] = -1.0
    return w


def _check_mode(j: int, n_modes: int) -> None:
    if not 1 <= j <= n_modes:
        raise ValueError(f"mode index {j} out of range for {n_modes} modes")


def _check_mode_pair(j: int, k: int, n_modes: int) -> None:
    _check_mode(j, n_modes)
    _check_mode(k, n_modes)
    if j == k:
        raise ValueError(f"mode indices must differ, got {j} and {k}")


def _q(j: int) -> int:
    return 2 * (j - 1)


def _p(j: int) -> int:
    return 2 * (j - 1) + 1


def identity(n_modes: int) -> SymplecticTransform:
    """The do-nothing circuit on `n_modes` modes."""
    return SymplecticTransform(n_modes, np.eye(2 * n_modes))


def sum_gate(ctrl: int, targ: int, n_modes: int) -> SymplecticTransform:
    """CV SUM gate adding the control position onto the target.

    Acts as q_targ -> q_targ + q_ctrl and p_ctrl -> p_ctrl - p_targ,
    leaving every other quadrature unchanged.

    Args:
        ctrl: 1-based control mode index.
        targ: 1-based target mode index, distinct from `ctrl`.
        n_modes: total number of modes.

    Raises:
        ValueError: if an index is out of range or ctrl == targ.
    """
    _check_mode_pair(ctrl, targ, n_modes)
    m = np.eye(2 * n_modes)
    m[_q(targ), _q(ctrl)] += 1.0
    m[_p(ctrl), _p(targ)] -= 1.0
    return SymplecticTransform(n_modes, m)


def single_mode_squeeze(scale: float, mode: int, n_modes: int) -> SymplecticTransform:
    """Squeezer scaling q by `scale` and p by 1/`scale` on one mode.

    Args:
        scale: position scale factor, must be positive.  Values above 1
            stretch the position quadrature.
        mode: 1-based mode index.
        n_modes: total number of modes.
    """
    if scale <= 0:
        raise ValueError(f"squeeze scale must be positive, got {scale}")
    _check_mode(mode, n_modes)
    m = np.eye(2 * n_modes)
    m[_q(mode), _q(mode)] = scale
    m[_p(mode), _p(mode)] = 1.0 / scale
    return SymplecticTransform(n_modes, m)


def two_mode_squeeze(gain: float, mode_a: int, mode_b: int, n_modes: int) -> SymplecticTransform:
    """Two-mode squeezing with amplification gain G >= 1.

    On the (q_a, p_a, q_b, p_b) block the matrix is

        [ sqrt(G) I        sqrt(G-1) Z ]
        [ sqrt(G-1) Z      sqrt(G) I   ]

    with Z = diag(1, -1).  G = 1 is the identity.

    Args:
        gain: amplification gain, G >= 1.
        mode_a: 1-based index of the first mode.
        mode_b: 1-based index of the second mode.
        n_modes: total number of modes.
    """
    if gain < 1.0:
        raise ValueError(f"two-mode squeeze gain must be >= 1, got {gain}")
    _check_mode_pair(mode_a, mode_b, n_modes)
    c = np.sqrt(gain)
    s = np.sqrt(gain - 1.0)
    m = np.eye(2 * n_modes)
    for j in (mode_a, mode_b):
        m[_q(j), _q(j)] = c
        m[_p(j), _p(j)] = c
    m[_q(mode_a), _q(mode_b)] = s
    m[_p(mode_a), _p(mode_b)] = -s
    m[_q(mode_b), _q(mode_a)] = s
    m[_p(mode_b), _p(mode_a)] = -s
    return SymplecticTransform(n_modes, m)


def beam_splitter(transmissivity: float, mode_a: int, mode_b: int, n_modes: int) -> SymplecticTransform:
    """Beam splitter with transmissivity eta in [0, 1].

    On the (q_a, p_a, q_b, p_b) block the matrix is

        [ sqrt(eta) I         sqrt(1-eta) I ]
        [ -sqrt(1-eta) I      sqrt(eta) I   ]

    so eta = 1 is the identity and eta = 1/2 is balanced.
    """
    if not 0.0 <= transmissivity <= 1.0:
        raise ValueError(f"transmissivity must lie in [0, 1], got {transmissivity}")
    _check_mode_pair(mode_a, mode_b, n_modes)
    t = np.sqrt(transmissivity)
    r = np.sqrt(1.0 - transmissivity)
    m = np.eye(2 * n_modes)
    for off in (0, 1):
        m[2 * (mode_a - 1) + off, 2 * (mode_a - 1) + off] = t
        m[2 * (mode_b - 1) + off, 2 * (mode_b - 1) + off] = t
        m[2 * (mode_a - 1) + off, 2 * (mode_b - 1) + off] = r
        m[2 * (mode_b - 1) + off, 2 * (mode_a - 1) + off] = -r
    return SymplecticTransform(n_modes, m)


def compose(*transforms: SymplecticTransform) -> SymplecticTransform:
    """Compose circuits in operator order (rightmost applied first)."""
    if not transforms:
        raise ValueError("compose needs at least one transform")
    n = transforms[0].n_modes
    for t in transforms:
        if t.n_modes != n:
            raise ValueError(
                f"mode count mismatch in compose: {t.n_modes} vs {n}"
            )
    m = transforms[0].matrix
    for t in transforms[1:]:
        m = m @ t.matrix
    return SymplecticTransform(n, m)


def inverse(transform: SymplecticTransform) -> SymplecticTransform:
    """Inverse circuit, computed from the symplectic structure.

    For symplectic S the inverse is -Omega S^T Omega, which avoids a
    numerical matrix inversion.
    """
    w = omega(transform.n_modes)
    return SymplecticTransform(transform.n_modes, -w @ transform.matrix.T @ w)


def apply(transform: SymplecticTransform, vec: np.ndarray) -> np.ndarray:
    """Apply the circuit to quadrature vectors of shape (..., 2N)."""
    v = np.asarray(vec, dtype=float)
    if v.shape[-1] != 2 * transform.n_modes:
        raise ValueError(
            f"vector length {v.shape[-1]} does not match {transform.n_modes} modes"
        )
    return v @ transform.matrix.T


def direct_sum(a: SymplecticTransform, b: SymplecticTransform) -> SymplecticTransform:
    """Circuit acting as `a` on the first modes and `b` on the rest."""
    n = a.n_modes + b.n_modes
    m = np.eye(2 * n)
    m[: 2 * a.n_modes, : 2 * a.n_modes] = a.matrix
    m[2 * a.n_modes :, 2 * a.n_modes :] = b.matrix
    return SymplecticTransform(n, m)


def is_symplectic(transform: SymplecticTransform, tol: float = 1e-12) -> bool:
    """Whether S Omega S^T = Omega holds entrywise within `tol`."""
    w = omega(transform.n_modes)
    s = transform.matrix
    return bool(np.abs(s @ w @ s.T - w).max() <= tol)
