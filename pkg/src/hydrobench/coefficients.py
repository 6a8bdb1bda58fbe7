"""Maxwell-molecule collision eigenvalues and derived transport coefficients.

The whole hierarchy is anchored to a single negative rate lambda02; the other
four nonzero eigenvalues are fixed rational multiples of it.  All coefficient
algebra is done in exact rationals so that the Maxwell-gas reference values
(7/6, 3/2, 19/120, 19/72 at mu = 1) come out as identities, not as floats
that happen to be close.

Sign conventions: the stored diffusivities and Burnett coefficients are the
positive constants of the time-explicit systems

    du/dt = -dp/dx + eps*Ds*u_xx + eps^2*beta_u*p_xxx
    dp/dt = -(5/3) du/dx + eps*Ds*p_xx + eps^2*beta_p*u_xxx
    ds/dt = eps*De*s_xx

so second-derivative terms damp and third-derivative terms disperse, with the
eigenvalues negative.  The equivalent flux-form equations carry the raw
combinations 2/(3*lambda02) + 1/(3*lambda11) etc. with their printed signs.

One transcription note: the published form of the Burnett p-coefficient
contains a garbled middle term; it is read here as 2/(3*lambda02*lambda11),
the only reading consistent with the Maxwell-gas value 19/72.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "BurnettCoefficients",
    "EigenvalueSet",
    "NsCoefficients",
    "SOUND_SPEED",
    "SOUND_SPEED_SQUARED",
    "eigenvalue_set",
    "transport_burnett",
    "transport_ns",
]

#: Adiabatic sound speed of the monatomic gas, a0^2 = 5/3.
SOUND_SPEED_SQUARED = Fraction(5, 3)
SOUND_SPEED = math.sqrt(5.0 / 3.0)

RateLike = Union[int, float, Fraction]


@dataclass(frozen=True)
class EigenvalueSet:
    """The five nonzero collision eigenvalues, anchored to lambda02 < 0.

    The derived eigenvalues are exact rational multiples:
    lambda11 = lambda20 = (2/3) lambda02, lambda03 = (3/2) lambda02,
    lambda12 = (7/6) lambda02.
    """

    lambda02: Fraction

    def __post_init__(self):
        if self.lambda02 >= 0:
            raise ValueError(f"lambda02 must be negative, got {self.lambda02}")

    @property
    def lambda11(self) -> Fraction:
        return Fraction(2, 3) * self.lambda02

    @property
    def lambda03(self) -> Fraction:
        return Fraction(3, 2) * self.lambda02

    @property
    def lambda20(self) -> Fraction:
        return Fraction(2, 3) * self.lambda02

    @property
    def lambda12(self) -> Fraction:
        return Fraction(7, 6) * self.lambda02

    @property
    def mu(self) -> Fraction:
        """Reference viscosity scale 1/|lambda02|."""
        return -1 / self.lambda02


@dataclass(frozen=True)
class NsCoefficients:
    """Navier-Stokes-level diffusivities (positive, per unit eps)."""

    sound_diffusivity: Fraction
    entropy_diffusivity: Fraction


@dataclass(frozen=True)
class BurnettCoefficients:
    """Dispersive third-derivative coefficients (positive, per unit eps^2).

    beta_p equals (5/3) * beta_u identically in the eigenvalues, which is the
    algebraic fact that decouples the sound waves into Riemann invariants.
    """

    beta_u: Fraction
    beta_p: Fraction


def eigenvalue_set(lambda02: RateLike = -1) -> EigenvalueSet:
    """Build the eigenvalue table from the anchor rate (default -1, mu = 1)."""
    return EigenvalueSet(Fraction(lambda02))


def transport_ns(eigenvalues: EigenvalueSet) -> NsCoefficients:
    """Sound and entropy diffusivities.

    For the Maxwell ratios these reduce to (7/6) mu and (3/2) mu exactly.
    """
    l02, l11 = eigenvalues.lambda02, eigenvalues.lambda11
    sound = -(Fraction(2, 3) / l02 + Fraction(1, 3) / l11)
    entropy = -1 / l11
    return NsCoefficients(sound_diffusivity=sound, entropy_diffusivity=entropy)


def transport_burnett(eigenvalues: EigenvalueSet) -> BurnettCoefficients:
    """Dispersive coefficients; (19/120) mu^2 and (19/72) mu^2 for Maxwell ratios."""
    l02, l11 = eigenvalues.lambda02, eigenvalues.lambda11
    beta_u = Fraction(8, 15) / l02**2 - Fraction(2, 5) / (l02 * l11) + Fraction(1, 10) / l11**2
    beta_p = Fraction(8, 9) / l02**2 - Fraction(2, 3) / (l02 * l11) + Fraction(1, 6) / l11**2
    return BurnettCoefficients(beta_u=beta_u, beta_p=beta_p)
