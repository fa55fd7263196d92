"""Undeformed hydrogen eigenstates in atomic units.

Special functions, normalized radial and full wavefunctions, energies,
closed-form inverse-power expectation values and the radial quadrature used
to check them.

Angular conventions: fully normalized spherical harmonics with the
Condon-Shortley phase, ``Y_l^m = N_lm P_l^m(cos theta) exp(i m phi)`` where
``P_l^m`` already carries the ``(-1)^m`` factor.  For negative ``m`` the
relation ``Y_l^{-m} = (-1)^m conj(Y_l^m)`` is used.

Energies use ``E_n = -1/(2 n^2)`` Hartree, consistent with the virial
theorem and ``<K> = 1/(2 n^2)``.  An expression without the factor 1/2
occasionally quoted for the unperturbed levels is a misprint.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, DomainError, SingularityError
from .quadrature import RadialGrid, integrate_radial  # noqa: F401  (re-export)

__all__ = [
    "QuantumNumbers",
    "RadialGrid",
    "assoc_laguerre",
    "assoc_legendre",
    "energy_level",
    "expectation_inv_r_power",
    "integrate_radial",
    "kinetic_action",
    "mean_kinetic",
    "radial_wavefunction",
    "spherical_harmonic",
    "wavefunction",
]


@dataclass(frozen=True)
class QuantumNumbers:
    """Hydrogen eigenstate labels ``(n, l, m)``."""

    n: int
    l: int  # noqa: E741
    m: int = 0

    def __post_init__(self):
        _check_nl(self.n, self.l)
        if abs(self.m) > self.l:
            raise DomainError(f"|m| must not exceed l: got l={self.l}, m={self.m}")


def _check_nl(n, l):  # noqa: E741
    if int(n) != n or n < 1:
        raise DomainError(f"principal quantum number must be an integer >= 1, got {n!r}")
    if int(l) != l or not 0 <= l <= n - 1:
        raise DomainError(f"orbital quantum number must satisfy 0 <= l <= n-1, got n={n}, l={l}")


def assoc_laguerre(k, alpha, x):
    """Generalized Laguerre polynomial ``L_k^(alpha)(x)`` by forward recurrence.

    Vectorized over ``x``.
    """
    if int(k) != k or k < 0:
        raise DomainError(f"degree must be a non-negative integer, got {k!r}")
    if int(alpha) != alpha or alpha < 0:
        raise DomainError(f"alpha must be a non-negative integer, got {alpha!r}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("Laguerre argument must be non-negative")
    prev = np.ones_like(x)
    if k == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha - x
    for j in range(1, k):
        prev, cur = cur, ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1)
    return cur if cur.ndim else float(cur)


def assoc_legendre(l, m, u):  # noqa: E741
    """Associated Legendre function ``P_l^m(u)`` with the Condon-Shortley phase.

    Uses the upward recurrence in ``l`` from the sectoral value
    ``P_m^m = (-1)^m (2m-1)!! (1-u^2)^(m/2)``.
    """
    if int(l) != l or l < 0:
        raise DomainError(f"l must be a non-negative integer, got {l!r}")
    if int(m) != m or not 0 <= m <= l:
        raise DomainError(f"m must satisfy 0 <= m <= l, got l={l}, m={m}")
    u = np.asarray(u, dtype=float)
    if np.any(np.abs(u) > 1):
        raise DomainError("Legendre argument must lie in [-1, 1]")
    double_fact = math.prod(range(1, 2 * m, 2))
    pmm = (-1) ** m * double_fact * (1.0 - u * u) ** (0.5 * m)
    if l == m:
        return pmm if pmm.ndim else float(pmm)
    prev, cur = pmm, u * (2 * m + 1) * pmm
    for j in range(m + 2, l + 1):
        prev, cur = cur, ((2 * j - 1) * u * cur - (j + m - 1) * prev) / (j - m)
    return cur if cur.ndim else float(cur)


def energy_level(n):
    """Bound-state energy ``-1/(2 n^2)`` in Hartree."""
    if int(n) != n or n < 1:
        raise DomainError(f"principal quantum number must be an integer >= 1, got {n!r}")
    return -0.5 / (n * n)


def mean_kinetic(n):
    """Mean kinetic energy ``<p^2/2M> = 1/(2 n^2)`` in Hartree."""
    return -energy_level(n)


def _radial_norm(n, l):  # noqa: E741
    return math.sqrt(
        (2.0 / n) ** 3 * math.factorial(n - l - 1) / (2 * n * math.factorial(n + l))
    )


def radial_wavefunction(n, l, r):  # noqa: E741
    """Normalized radial function ``R_nl(r)``, vectorized over ``r``."""
    _check_nl(n, l)
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("radius must be non-negative")
    rho = 2.0 * r / n
    value = _radial_norm(n, l) * np.exp(-0.5 * rho) * rho**l * assoc_laguerre(
        n - l - 1, 2 * l + 1, rho
    )
    return value if value.ndim else float(value)


def _angular_norm(l, m):  # noqa: E741
    m = abs(m)
    return math.sqrt((2 * l + 1) / (4 * math.pi) * math.factorial(l - m) / math.factorial(l + m))


def theta_function(l, m, theta):  # noqa: E741
    """Real polar factor of ``Y_l^m`` so that ``Y_l^m = theta_function * exp(i m phi)``."""
    sign = (-1) ** m if m < 0 else 1
    return sign * _angular_norm(l, m) * assoc_legendre(l, abs(m), np.cos(theta))


def spherical_harmonic(l, m, theta, phi):  # noqa: E741
    return theta_function(l, m, theta) * np.exp(1j * m * np.asarray(phi, dtype=float))


def real_amplitude(q, r, theta):
    """``R_nl(r) * Theta_lm(theta)``; the eigenfunction without its azimuthal phase."""
    return radial_wavefunction(q.n, q.l, r) * theta_function(q.l, q.m, theta)


def wavefunction(q, point):
    """Normalized ``psi_nlm`` at a point with attributes ``r``, ``theta``, ``phi``."""
    value = real_amplitude(q, point.r, point.theta) * np.exp(1j * q.m * point.phi)
    return complex(value)


def kinetic_action(q, point):
    """``(K psi)(point)`` for an eigenstate, via ``K psi = (E_n + 1/r) psi``."""
    if point.r <= 0:
        raise SingularityError("kinetic action is singular at r = 0")
    return (energy_level(q.n) + 1.0 / point.r) * wavefunction(q, point)


def expectation_inv_r_power(n, l, k):  # noqa: E741
    """Closed-form ``<r^-k>`` for ``k`` in {1, 2, 3} (atomic units)."""
    _check_nl(n, l)
    if k == 1:
        return 1.0 / n**2
    if k == 2:
        return 1.0 / (n**3 * (l + 0.5))
    if k == 3:
        if l == 0:
            raise DivergenceError("<r^-3> diverges for s-states (l = 0)")
        return 1.0 / (n**3 * l * (l + 0.5) * (l + 1))
    raise DomainError(f"k must be 1, 2 or 3, got {k!r}")


def radial_overlap(n, n_prime, l, weight=None, size=200):  # noqa: E741
    """Quadrature of ``int R_nl R_n'l w(r) r^2 dr`` on a grid matched to the pair.

    Returns ``(value, error)``.
    """
    grid = RadialGrid.for_pair(n, n_prime, size=size)

    def integrand(r):
        f = radial_wavefunction(n, l, r) * radial_wavefunction(n_prime, l, r) * r * r
        return f if weight is None else f * weight(r)

    return integrate_radial(integrand, grid)
