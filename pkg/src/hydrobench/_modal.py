"""Shared per-mode machinery: DFT conventions and exact modal propagation.

Mode arrays follow the numpy FFT layout with coefficients normalized as
fft(x)/N, so a real field synthesizes as u(x) = sum_k u_hat[k] exp(+i k x).
Under the traveling-wave sign convention exp(sigma*t - i*k*x) used by the
symbol matrices, DFT index m therefore carries plane wavenumber -k_m, and the
propagator for index m is the matrix exponential of the symbol at -k_m.

For even N the Nyquist index has no conjugate partner; its content is the
aliased sum of the +-N/2 pair, and the exact band-limited propagator sampled
on the grid is the real part of the +N/2 propagator.
"""

from __future__ import annotations

from typing import Callable

import numpy as np
import scipy.linalg

__all__ = [
    "HermitianSymmetryError",
    "forward_modes",
    "hermitian_violation",
    "inverse_modes",
    "mode_propagators",
    "propagate",
    "wavenumbers",
]

#: Eigenvector conditioning beyond this means "defective"; fall back to expm.
DEFECT_RCOND = 1e-10

#: Relative Hermitian-symmetry violation tolerated when synthesizing real fields.
HERMITIAN_TOL = 1e-9


class HermitianSymmetryError(ValueError):
    """A spectrum meant to describe real fields was not conjugate-symmetric."""


def wavenumbers(n: int) -> np.ndarray:
    """Integer wavenumbers in numpy FFT order: 0..n/2-1, -n/2..-1."""
    return np.fft.fftfreq(n, d=1.0 / n).astype(int)


def forward_modes(values: np.ndarray) -> np.ndarray:
    """Real samples (..., n) to normalized mode coefficients fft(x)/n."""
    values = np.asarray(values, dtype=float)
    return np.fft.fft(values, axis=-1) / values.shape[-1]


def hermitian_violation(modes: np.ndarray) -> float:
    """Worst-case |mode(-k) - conj(mode(k))|, relative to the spectrum scale."""
    modes = np.asarray(modes, dtype=complex)
    n = modes.shape[-1]
    mirrored = np.conj(modes[..., (-np.arange(n)) % n])
    scale = max(1.0, float(np.max(np.abs(modes))) if modes.size else 0.0)
    return float(np.max(np.abs(modes - mirrored))) / scale


def inverse_modes(modes: np.ndarray) -> np.ndarray:
    """Mode coefficients back to real samples; rejects non-Hermitian input."""
    modes = np.asarray(modes, dtype=complex)
    violation = hermitian_violation(modes)
    if violation > HERMITIAN_TOL:
        raise HermitianSymmetryError(
            f"spectrum is not conjugate-symmetric (violation {violation:.3e}); "
            "cannot synthesize a real field"
        )
    n = modes.shape[-1]
    return np.fft.ifft(modes * n, axis=-1).real


def mode_propagators(
    matrix_of_wavenumber: Callable[[float], np.ndarray],
    n: int,
    dt: float,
) -> np.ndarray:
    """Exact propagators exp(M*dt), one per DFT index, shape (n, d, d).

    Each index m uses the symbol at plane wavenumber -k_m (see module header).
    Propagators come from the eigendecomposition; a mode whose eigenvector
    matrix is ill conditioned beyond DEFECT_RCOND falls back to
    scaling-and-squaring.  Evaluation is a deterministic serial loop, so the
    result never depends on scheduling.
    """
    k = wavenumbers(n)
    mats = np.stack([matrix_of_wavenumber(float(-km)) for km in k])
    eigvals, eigvecs = np.linalg.eig(mats)
    with np.errstate(all="ignore"):
        conds = np.linalg.cond(eigvecs)
    phases = np.exp(eigvals * dt)
    props = np.matmul(eigvecs * phases[:, None, :], np.linalg.inv(eigvecs))
    bad = ~np.isfinite(conds) | (conds > 1.0 / DEFECT_RCOND)
    for idx in np.nonzero(bad)[0]:
        props[idx] = scipy.linalg.expm(mats[idx] * dt)
    if n % 2 == 0:
        # Nyquist: exact average of the aliased +-N/2 propagator pair.
        props[n // 2] = props[n // 2].real.astype(complex)
    return props


def propagate(
    modes: np.ndarray,
    matrix_of_wavenumber: Callable[[float], np.ndarray],
    dt: float,
) -> np.ndarray:
    """Advance stacked field modes (d, n) by exp(M(-k_m)*dt) per index."""
    modes = np.asarray(modes, dtype=complex)
    d, n = modes.shape
    props = mode_propagators(matrix_of_wavenumber, n, dt)
    advanced = np.einsum("kij,jk->ik", props, modes)
    return advanced
