"""Deformation-parameter algebra.

A two-parameter deformed Heisenberg algebra is described either by the raw
coefficients ``(beta, beta')`` (units of inverse momentum squared) or by the
pair (minimal length, eta)::

    dx_min = hbar * sqrt(beta + beta')      eta = beta / (beta + beta')

The first-order Coulomb term involves the length ``b = hbar sqrt(2 beta - beta')``,
which is real only for ``eta >= 1/3``.  The endpoint ``eta = 1/3``
(``beta' = 2 beta``) is the case of commuting coordinates.  All quantities
are in atomic units (hbar = 1).
"""

import math
from dataclasses import dataclass

from .errors import DomainError

ETA_MIN = 1.0 / 3.0
ETA_MAX = 1.0

# |3 eta - 1| below this snaps to the commutative endpoint exactly.
_ETA_SNAP = 8 * 2.220446049250313e-16


@dataclass(frozen=True)
class DeformationParameters:
    """Deformation coefficients ``beta`` and ``beta_prime`` (atomic units)."""

    beta: float = 0.0
    beta_prime: float = 0.0

    def __post_init__(self):
        if not (self.beta >= 0 and self.beta_prime >= 0):
            raise DomainError(
                f"deformation parameters must be non-negative, got "
                f"beta={self.beta!r}, beta'={self.beta_prime!r}"
            )
        if 2 * self.beta < self.beta_prime:
            raise DomainError(
                "2*beta - beta' must be non-negative (eta >= 1/3); got "
                f"beta={self.beta!r}, beta'={self.beta_prime!r}"
            )

    @property
    def coulomb_coefficient(self):
        """``2 beta - beta'``; exactly zero in the commutative case."""
        return 2 * self.beta - self.beta_prime

    @property
    def is_undeformed(self):
        return self.beta == 0 and self.beta_prime == 0

    def scaled(self, factor):
        return DeformationParameters(factor * self.beta, factor * self.beta_prime)


UNDEFORMED = DeformationParameters()


def from_minimal_length(delta_x_min, eta):
    """Build parameters from the minimal length (Bohr radii) and eta in [1/3, 1]."""
    if not delta_x_min >= 0:
        raise DomainError(f"minimal length must be non-negative, got {delta_x_min!r}")
    if not ETA_MIN - _ETA_SNAP <= eta <= ETA_MAX:
        raise DomainError(f"eta must lie in [1/3, 1], got {eta!r}")
    total = delta_x_min**2
    if abs(3 * eta - 1) <= _ETA_SNAP:
        beta = total / 3
        return DeformationParameters(beta, 2 * beta)
    return DeformationParameters(eta * total, (1 - eta) * total)


def minimal_length(p):
    """``hbar sqrt(beta + beta')``."""
    return math.sqrt(p.beta + p.beta_prime)


def eta_of(p):
    """``beta / (beta + beta')``."""
    total = p.beta + p.beta_prime
    if total == 0:
        raise DomainError("eta is undefined for vanishing deformation")
    return p.beta / total


def b_parameter(p):
    """Regularization length ``hbar sqrt(2 beta - beta')``."""
    c = p.coulomb_coefficient
    if c < 0:
        raise DomainError("2*beta - beta' is negative; b is not real")
    return math.sqrt(c)
