"""Closed-form orbital magnetic moment and its comparison with relativity.

With the deformed current integrated over all tubes, and with
``<K> = 1/(2 n^2)`` and ``<1/r> = 2 <K>``, the moment collapses to::

    mu_z = -mu_B m (1 + 8 beta M <K>) = -mu_B m (1 + 4 beta / n^2)

which depends on ``beta`` alone.  In terms of the minimal length and
``eta`` the relative correction is ``varsigma = 4 eta dx_min^2 / (a^2 n^2)``.
The weak-relativistic moment ``-mu_B m (1 - <K>/(M c^2))`` shifts in the
opposite direction.
"""

from dataclasses import dataclass

from .deformation import ETA_MAX, ETA_MIN, from_minimal_length
from .errors import DomainError
from .hydrogen import _check_nl, expectation_inv_r_power, mean_kinetic
from .units import ALPHA, BOHR_MAGNETON_AU

#: Relative uncertainty of the measured Bohr magneton used for the verdict.
EPSILON_BOHR = 2.5e-8


def _check_nm(n, m):
    if int(n) != n or n < 1:
        raise DomainError(f"principal quantum number must be an integer >= 1, got {n!r}")
    if int(m) != m or abs(m) > n - 1:
        raise DomainError(f"|m| must not exceed n-1, got n={n}, m={m}")


def magnetic_moment_closed(n, m, params):
    """``-mu_B m (1 + 4 beta M e^2 / (a n^2))`` in atomic units."""
    _check_nm(n, m)
    return -BOHR_MAGNETON_AU * m * (1.0 + 4.0 * params.beta / n**2)


def magnetic_moment_general(n, l, m, params):  # noqa: E741
    """Moment from the term-by-term form with ``<K>`` and ``<1/r>``.

    ``-mu_B m (1 + 4 beta' <K> + 2 (2 beta - beta') <1/r>)``
    """
    _check_nl(n, l)
    if abs(m) > l:
        raise DomainError(f"|m| must not exceed l, got l={l}, m={m}")
    correction = (
        4 * params.beta_prime * mean_kinetic(n)
        + 2 * params.coulomb_coefficient * expectation_inv_r_power(n, l, 1)
    )
    return -BOHR_MAGNETON_AU * m * (1.0 + correction)


def varsigma(delta_x_min, eta, n):
    """Relative deformation correction ``4 eta dx_min^2 / (a^2 n^2)``.

    ``delta_x_min`` is in Bohr radii.
    """
    if not delta_x_min >= 0:
        raise DomainError(f"minimal length must be non-negative, got {delta_x_min!r}")
    if not ETA_MIN - 1e-15 <= eta <= ETA_MAX:
        raise DomainError(f"eta must lie in [1/3, 1], got {eta!r}")
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2 (orbital moment needs l >= 1), got {n!r}")
    return eta * 4.0 * delta_x_min**2 / n**2


def varsigma_of(n, params):
    """``varsigma`` expressed through ``beta`` directly: ``4 beta / n^2``."""
    return 4.0 * params.beta / n**2


def relativistic_fraction(n, alpha=ALPHA):
    """``<K> / (M c^2) = alpha^2 / (2 n^2)``."""
    if int(n) != n or n < 1:
        raise DomainError(f"principal quantum number must be an integer >= 1, got {n!r}")
    return alpha**2 / (2 * n**2)


def relativistic_moment(n, m, alpha=ALPHA):
    """Weak-relativistic moment ``-mu_B m (1 - <K>/(M c^2))``.

    ``alpha`` only enters the kinetic correction, so ``alpha=0`` yields the
    non-relativistic ``-m mu_B``.
    """
    _check_nm(n, m)
    return -BOHR_MAGNETON_AU * m * (1.0 - relativistic_fraction(n, alpha))


@dataclass(frozen=True)
class MomentResult:
    """Moment of one state with its deformation and relativistic parts.

    ``mu_z`` and ``undeformed`` are in atomic units; ``*_bohr`` fields are
    in Bohr magnetons.  ``relativistic_shift`` is the signed relative change
    ``(mu_rel - mu_0) / mu_0``.
    """

    n: int
    m: int
    mu_z: float
    undeformed: float
    varsigma: float
    relativistic_fraction: float
    relativistic_shift: float
    epsilon: float
    ratio: float
    below_precision: bool

    @property
    def mu_z_bohr(self):
        return self.mu_z / BOHR_MAGNETON_AU

    @property
    def undeformed_bohr(self):
        return self.undeformed / BOHR_MAGNETON_AU

    @property
    def signs(self):
        def sign(x):
            return "+" if x > 0 else "-" if x < 0 else "0"

        return {"deformation": sign(self.varsigma), "relativistic": sign(self.relativistic_shift)}

    @property
    def verdict(self):
        return "below measurement precision" if self.below_precision else "within measurement reach"


def comparison_report(n, m, params, epsilon=EPSILON_BOHR):
    """Assemble a :class:`MomentResult` for state ``(n, m)``."""
    if not epsilon > 0:
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    mu = magnetic_moment_closed(n, m, params)
    mu0 = -BOHR_MAGNETON_AU * m
    s = varsigma_of(n, params)
    rel = relativistic_fraction(n)
    ratio = s / epsilon
    return MomentResult(
        n=n,
        m=m,
        mu_z=mu,
        undeformed=mu0,
        varsigma=s,
        relativistic_fraction=rel,
        relativistic_shift=-rel,
        epsilon=epsilon,
        ratio=ratio,
        below_precision=ratio < 1,
    )


def report_from_minimal_length(n, m, delta_x_min, eta, epsilon=EPSILON_BOHR):
    return comparison_report(n, m, from_minimal_length(delta_x_min, eta), epsilon)
