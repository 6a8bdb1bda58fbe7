"""Plane-wave dispersion relations and per-wavenumber symbol matrices.

Convention used throughout: plane waves are R * exp(sigma*t - i*k*x), so the
substitutions are d/dx -> -ik, d2/dx2 -> -k^2, d3/dx3 -> +i*k^3.  Every model
symbol M below generates d/dt(modes) = M(modes) for the per-wavenumber mode
vector, ordered (u, p, s) for the hydrodynamic models, (R+, R-, s) for the
Riemann-decoupled form, and (n, u, p, Pi, q) for the kinetic moment reference.

Branches of the growth rate sigma(k) are tracked across a k grid by
nearest-neighbor continuation in the complex plane, seeded at the first grid
point from the analytic small-k limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from .coefficients import (
    SOUND_SPEED,
    EigenvalueSet,
    transport_burnett,
    transport_ns,
)

__all__ = [
    "Branch",
    "BranchCollisionError",
    "DispersionTable",
    "ModelId",
    "branches",
    "sigma_asymptotic",
    "symbol_matrix",
]

#: Two candidate matches closer than this are treated as a genuine collision.
MATCH_AMBIGUITY_TOL = 1e-12


class ModelId(Enum):
    """The five closures whose per-mode symbols this module can build."""

    EULER = "euler"
    NAVIER_STOKES = "navier_stokes"
    BURNETT = "burnett"
    RIEMANN_DECOUPLED = "riemann_decoupled"
    MOMENT_REFERENCE = "moment_reference"

    @property
    def dimension(self) -> int:
        return 5 if self is ModelId.MOMENT_REFERENCE else 3


class Branch(Enum):
    """Persistent labels for sigma(k) branches."""

    ENTROPY = "entropy"
    SOUND_PLUS = "sound_plus"
    SOUND_MINUS = "sound_minus"
    KINETIC_STRESS = "kinetic_stress"
    KINETIC_HEAT = "kinetic_heat"


class BranchCollisionError(RuntimeError):
    """Two eigenvalue candidates were indistinguishable during matching."""


@dataclass(frozen=True)
class DispersionTable:
    """Matched sigma(k) branches for one model.

    sigma has shape (len(k_grid), len(labels)); column j follows labels[j]
    continuously across the grid.
    """

    model: ModelId
    k_grid: np.ndarray
    labels: tuple[Branch, ...]
    sigma: np.ndarray

    def branch(self, label: Branch) -> np.ndarray:
        return self.sigma[:, self.labels.index(label)]

    def iter_rows(self) -> Iterator[tuple[float, Branch, complex]]:
        """Rows in (k, branch, sigma) order, branches in label order."""
        for i, k in enumerate(self.k_grid):
            for j, label in enumerate(self.labels):
                yield float(k), label, complex(self.sigma[i, j])


def sigma_asymptotic(
    k: float, eps: float, eigenvalues: EigenvalueSet, branch: Branch
) -> complex:
    """Closed-form growth rate of the Burnett-level dispersion relation.

    Entropy branch: sigma = eps*k^2/lambda11 (real, negative).
    Sound branches: sigma = +-i*a0*k*(1 + k^2*eps^2*beta_u) - eps*k^2*Ds
    with Ds the positive sound diffusivity.
    """
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if branch is Branch.ENTROPY:
        return complex(eps * k * k / float(eigenvalues.lambda11))
    if branch in (Branch.SOUND_PLUS, Branch.SOUND_MINUS):
        sign = 1.0 if branch is Branch.SOUND_PLUS else -1.0
        damping = -eps * k * k * float(transport_ns(eigenvalues).sound_diffusivity)
        beta_u = float(transport_burnett(eigenvalues).beta_u)
        return sign * 1j * SOUND_SPEED * k * (1.0 + k * k * eps * eps * beta_u) + damping
    raise ValueError(f"no asymptotic form for branch {branch!r}")


def symbol_matrix(
    model: ModelId, k: float, eps: float, eigenvalues: EigenvalueSet
) -> np.ndarray:
    """Per-wavenumber generator M with d/dt(mode vector) = M(mode vector).

    eps is ignored for the Euler model (its symbol has no eps dependence) and
    must be positive for the moment reference, whose collision terms carry
    1/eps.  Mode ordering is documented in the module header.
    """
    if model is ModelId.MOMENT_REFERENCE:
        from . import moment_reference

        return moment_reference.moment_symbol(k, eps, eigenvalues)

    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    ik = 1j * k
    matrix = np.zeros((3, 3), dtype=complex)
    if model is ModelId.EULER:
        matrix[0, 1] = ik
        matrix[1, 0] = (5.0 / 3.0) * ik
        return matrix

    ns = transport_ns(eigenvalues)
    damp_sound = -eps * float(ns.sound_diffusivity) * k * k
    damp_entropy = -eps * float(ns.entropy_diffusivity) * k * k

    if model is ModelId.NAVIER_STOKES:
        matrix[0, 1] = ik
        matrix[1, 0] = (5.0 / 3.0) * ik
        matrix[0, 0] = matrix[1, 1] = damp_sound
        matrix[2, 2] = damp_entropy
        return matrix

    burnett = transport_burnett(eigenvalues)
    beta_u = float(burnett.beta_u)
    beta_p = float(burnett.beta_p)

    if model is ModelId.BURNETT:
        matrix[0, 1] = ik * (1.0 + eps * eps * beta_u * k * k)
        matrix[1, 0] = ik * (5.0 / 3.0 + eps * eps * beta_p * k * k)
        matrix[0, 0] = matrix[1, 1] = damp_sound
        matrix[2, 2] = damp_entropy
        return matrix

    if model is ModelId.RIEMANN_DECOUPLED:
        # Diagonal by construction: (R+, R-, s).
        dispersive = 1j * SOUND_SPEED * k * (1.0 + eps * eps * beta_u * k * k)
        matrix[0, 0] = dispersive + damp_sound
        matrix[1, 1] = -dispersive + damp_sound
        matrix[2, 2] = damp_entropy
        return matrix

    raise ValueError(f"unknown model {model!r}")


def _branch_labels(model: ModelId) -> tuple[Branch, ...]:
    if model is ModelId.MOMENT_REFERENCE:
        return (
            Branch.ENTROPY,
            Branch.SOUND_PLUS,
            Branch.SOUND_MINUS,
            Branch.KINETIC_STRESS,
            Branch.KINETIC_HEAT,
        )
    return (Branch.ENTROPY, Branch.SOUND_PLUS, Branch.SOUND_MINUS)


def _seed_values(
    model: ModelId, k: float, eps: float, eigenvalues: EigenvalueSet
) -> dict[Branch, complex]:
    """Analytic small-k limits used to name the branches at the first grid point."""
    if model is ModelId.EULER:
        return {
            Branch.ENTROPY: 0j,
            Branch.SOUND_PLUS: 1j * SOUND_SPEED * k,
            Branch.SOUND_MINUS: -1j * SOUND_SPEED * k,
        }
    seeds = {
        Branch.ENTROPY: sigma_asymptotic(k, eps, eigenvalues, Branch.ENTROPY),
        Branch.SOUND_PLUS: sigma_asymptotic(k, eps, eigenvalues, Branch.SOUND_PLUS),
        Branch.SOUND_MINUS: sigma_asymptotic(k, eps, eigenvalues, Branch.SOUND_MINUS),
    }
    if model is ModelId.MOMENT_REFERENCE:
        seeds[Branch.KINETIC_STRESS] = complex(float(eigenvalues.lambda02) / eps)
        seeds[Branch.KINETIC_HEAT] = complex(float(eigenvalues.lambda11) / eps)
    return seeds


def _assign_seeded(
    seeds: dict[Branch, complex], values: np.ndarray
) -> dict[Branch, complex]:
    """Match eigenvalues to seed labels; ties broken by Im sign, then Re."""
    remaining = list(range(len(values)))
    assigned: dict[Branch, complex] = {}
    for label, seed in seeds.items():
        dists = [(abs(values[i] - seed), i) for i in remaining]
        dists.sort(key=lambda item: item[0])
        best = dists[0]
        if len(dists) > 1 and abs(dists[1][0] - best[0]) <= MATCH_AMBIGUITY_TOL:
            tied = [i for d, i in dists if abs(d - best[0]) <= MATCH_AMBIGUITY_TOL]
            tied.sort(
                key=lambda i: (
                    np.sign(values[i].imag) != np.sign(seed.imag),
                    abs(values[i].real - seed.real),
                )
            )
            best = (abs(values[tied[0]] - seed), tied[0])
        assigned[label] = complex(values[best[1]])
        remaining.remove(best[1])
    return assigned


def _assign_continued(
    previous: dict[Branch, complex], values: np.ndarray, k: float
) -> dict[Branch, complex]:
    """Greedy nearest-neighbor continuation, most confident label first."""
    remaining = list(range(len(values)))
    pending = list(previous.keys())
    assigned: dict[Branch, complex] = {}
    while pending:
        best_label = None
        best_idx = -1
        best_dist = np.inf
        second_dist = np.inf
        for label in pending:
            dists = sorted((abs(values[i] - previous[label]), i) for i in remaining)
            if dists[0][0] < best_dist:
                best_label, best_idx, best_dist = label, dists[0][1], dists[0][0]
                second_dist = dists[1][0] if len(dists) > 1 else np.inf
        if second_dist - best_dist <= MATCH_AMBIGUITY_TOL:
            raise BranchCollisionError(
                f"ambiguous branch match at k = {k:g}: two eigenvalue candidates "
                f"are equidistant within {MATCH_AMBIGUITY_TOL:g}; refine the k grid "
                "(a collision that persists under refinement is a genuine eigenvalue "
                "merge, past which these labels stop being meaningful)"
            )
        assigned[best_label] = complex(values[best_idx])
        remaining.remove(best_idx)
        pending.remove(best_label)
    return assigned


def branches(
    model: ModelId,
    k_grid: Sequence[float],
    eps: float,
    eigenvalues: EigenvalueSet,
) -> DispersionTable:
    """Numerical sigma(k) branches of a model symbol, matched across the grid.

    The grid must be ascending and strictly positive.  For the moment
    reference the first point should satisfy k0 <= 0.1*|lambda02|/eps so the
    kinetic and hydrodynamic branches start well separated; that system also
    has a real exceptional point near eps*k ~ 0.3*|lambda02| where the
    entropy and kinetic-heat branches merge into a conjugate pair, and
    continuation past it raises BranchCollisionError by construction.
    """
    grid = np.asarray(k_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("k_grid must be a nonempty 1-D sequence")
    if grid[0] <= 0 or np.any(np.diff(grid) <= 0):
        raise ValueError("k_grid must be strictly positive and ascending")

    labels = _branch_labels(model)
    sigma = np.zeros((grid.size, len(labels)), dtype=complex)
    current: dict[Branch, complex] | None = None
    for row, k in enumerate(grid):
        values = np.linalg.eigvals(symbol_matrix(model, float(k), eps, eigenvalues))
        if current is None:
            current = _assign_seeded(_seed_values(model, float(k), eps, eigenvalues), values)
        else:
            current = _assign_continued(current, values, float(k))
        for col, label in enumerate(labels):
            sigma[row, col] = current[label]
    return DispersionTable(model=model, k_grid=grid, labels=labels, sigma=sigma)
