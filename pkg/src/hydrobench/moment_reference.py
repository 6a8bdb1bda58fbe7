"""Closed five-field kinetic moment system used as numerical ground truth.

The state per wavenumber is (n, u, p, Pi, q): the three conserved moments
plus the stress moment Pi = <psi02, phi> and heat-flux moment q = <psi11,
phi>.  Streaming couples them through the exact eigenfunction recursions with
the higher moments m03, m12, m20 truncated to zero (Grad-style closure);
collisions act exactly diagonally with rates lambda02/eps on Pi and
lambda11/eps on q.  The system in flux form:

    dn/dt  = -du/dx
    du/dt  = -d(p + Pi)/dx
    dp/dt  = -(5/3) du/dx - (2/3) dq/dx
    dPi/dt = -(4/3) du/dx - (8/15) dq/dx + (lambda02/eps) Pi
    dq/dt  = -dPi/dx - (5/2) dT/dx + (lambda11/eps) q,    T = p - n

Its three slow eigenvalue branches converge to the Burnett-level dispersion
relation at rate O(k (eps k)^3), which is the module's central validation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _modal
from .coefficients import SOUND_SPEED, EigenvalueSet
from .hydro_spectral import HydroState

__all__ = [
    "HydroProjection",
    "MomentState",
    "burnett_deviation_rms",
    "evolve_moments",
    "from_hydro",
    "hydro_projection",
    "moment_symbol",
]

MOMENT_ORDER = ("n", "u", "p", "stress", "heat_flux")


@dataclass(frozen=True)
class MomentState:
    """Per-wavenumber coefficients of (n, u, p, Pi, q), numpy FFT layout."""

    modes: np.ndarray
    eps: float
    time: float = 0.0

    def __post_init__(self):
        modes = np.asarray(self.modes, dtype=complex)
        if modes.ndim != 2 or modes.shape[0] != 5:
            raise ValueError(f"modes must have shape (5, N), got {modes.shape}")
        if self.eps <= 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        object.__setattr__(self, "modes", modes)

    @property
    def grid_size(self) -> int:
        return self.modes.shape[1]

    def field_modes(self, name: str) -> np.ndarray:
        return self.modes[MOMENT_ORDER.index(name)]


@dataclass(frozen=True)
class HydroProjection:
    """Hydrodynamic view of a moment state plus its kinetic residuals."""

    state: HydroState
    stress: np.ndarray
    heat_flux: np.ndarray


def moment_symbol(k: float, eps: float, eigenvalues: EigenvalueSet) -> np.ndarray:
    """Per-wavenumber generator of the five-field system, d/dx -> -ik."""
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    ik = 1j * k
    matrix = np.zeros((5, 5), dtype=complex)
    matrix[0, 1] = ik
    matrix[1, 2] = ik
    matrix[1, 3] = ik
    matrix[2, 1] = (5.0 / 3.0) * ik
    matrix[2, 4] = (2.0 / 3.0) * ik
    matrix[3, 1] = (4.0 / 3.0) * ik
    matrix[3, 4] = (8.0 / 15.0) * ik
    matrix[3, 3] = float(eigenvalues.lambda02) / eps
    matrix[4, 3] = ik
    matrix[4, 2] = (5.0 / 2.0) * ik
    matrix[4, 0] = -(5.0 / 2.0) * ik
    matrix[4, 4] = float(eigenvalues.lambda11) / eps
    return matrix


def from_hydro(state: HydroState, eps: float) -> MomentState:
    """Moment state with the hydro fields imposed and Pi = q = 0.

    The kinetic moments start on the equilibrium manifold; they relax toward
    their quasi-steady closures within a few collision times eps/|lambda|.
    """
    stacked = np.stack(
        [state.n, state.u, state.p, np.zeros(state.grid_size), np.zeros(state.grid_size)]
    )
    return MomentState(modes=_modal.forward_modes(stacked), eps=eps, time=state.time)


def evolve_moments(
    state: MomentState, eigenvalues: EigenvalueSet, dt: float
) -> MomentState:
    """Advance each mode by the exact exponential of the moment symbol.

    Exact propagation makes the stiffness knob lambda/eps harmless; the
    semigroup property holds to roundoff and the k = 0 rows of n, u, p are
    conserved identically.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    advanced = _modal.propagate(
        state.modes,
        lambda kappa: moment_symbol(kappa, state.eps, eigenvalues),
        dt,
    )
    return MomentState(modes=advanced, eps=state.eps, time=state.time + dt)


def hydro_projection(state: MomentState) -> HydroProjection:
    """Project onto (u, p, s) with s = (3/2)p - (5/2)n; keep Pi, q as residuals."""
    s_modes = 1.5 * state.field_modes("p") - 2.5 * state.field_modes("n")
    hydro_modes = np.stack([state.field_modes("u"), state.field_modes("p"), s_modes])
    fields = _modal.inverse_modes(hydro_modes)
    residuals = _modal.inverse_modes(
        np.stack([state.field_modes("stress"), state.field_modes("heat_flux")])
    )
    return HydroProjection(
        state=HydroState(u=fields[0], p=fields[1], s=fields[2], time=state.time),
        stress=residuals[0],
        heat_flux=residuals[1],
    )


def burnett_deviation_rms(
    initial: HydroState,
    eps: float,
    eigenvalues: EigenvalueSet,
    time: float,
    period: float | None = None,
    n_samples: int = 32,
) -> float:
    """Cycle-averaged deviation between Burnett evolution and the moment truth.

    Both systems start from `initial` (the moment state with Pi = q = 0) and
    the full-state L2 difference over (u, p, s) is sampled at n_samples times
    spanning one acoustic period that ends at `time`; the RMS over the window
    is returned.  Averaging over a period removes the acoustic phase of the
    O(eps) entropy component from the measurement, so the returned number
    scales cleanly at first order in eps.  The default period is that of the
    k = 1 sound wave, 2*pi/a0.
    """
    from .dispersion import ModelId
    from .hydro_spectral import evolve, to_modes

    if period is None:
        period = 2.0 * np.pi / SOUND_SPEED
    if time <= period:
        raise ValueError(f"need time > one period ({period:g}), got {time}")
    sample_times = time - period + period * np.arange(1, n_samples + 1) / n_samples
    dx = 2.0 * np.pi / initial.grid_size

    hydro = to_modes(initial)
    moments = from_hydro(initial, eps)
    previous = initial.time
    total = 0.0
    for t in sample_times:
        step = float(t - previous)
        hydro = evolve(hydro, ModelId.BURNETT, eps, eigenvalues, step)
        moments = evolve_moments(moments, eigenvalues, step)
        previous = t
        s_modes = 1.5 * moments.field_modes("p") - 2.5 * moments.field_modes("n")
        ref = np.stack([moments.field_modes("u"), moments.field_modes("p"), s_modes])
        diff = hydro.modes - ref
        # Parseval: sum over modes of N*|diff|^2*dx equals the grid L2 norm squared.
        l2_sq = float(np.sum(np.abs(diff) ** 2)) * initial.grid_size * dx
        total += l2_sq
    return float(np.sqrt(total / n_samples))
