"""Probability current of deformed hydrogen eigenstates and its magnetic moment.

For a stationary state ``psi_nlm`` with real radial and polar factors only
the azimuthal component of the current survives.  To first order in the
deformation it reads (atomic units, probability flux, no charge factor)::

    j_phi = m / (r sin(theta)) * ( |psi|^2
                                   + 4 beta' psi* K psi
                                   + 2 (2 beta - beta') |psi|^2 / r
                                   + 2 sum_n' c_n' psi*_n'lm psi_nlm )

with ``K psi = (E_n + 1/r) psi``.  The electric current is ``-e`` times this.
Each current tube of cross-section ``d sigma = r dr d theta`` encloses the
area ``pi r^2 sin^2(theta)`` and contributes ``d mu_z = (pi / c) j r^2 sin^2(theta) d sigma``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, SingularityError
from .hydrogen import QuantumNumbers, energy_level, real_amplitude
from .perturbation import CorrectionExpansion
from .quadrature import RadialGrid, gauss_legendre
from .units import BOHR_MAGNETON_AU, C_AU

_GUARD = 1e-12
TERMS = ("ordinary", "kinetic", "coulomb", "cross")


@dataclass(frozen=True)
class SphericalPoint:
    """Point ``(r, theta, phi)`` away from the polar axis and the origin."""

    r: float
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not self.r > 0:
            raise DomainError(f"r must be positive, got {self.r!r}")
        if not 0 < self.theta < math.pi:
            raise DomainError(f"theta must lie in (0, pi), got {self.theta!r}")
        if not 0 <= self.phi < 2 * math.pi:
            raise DomainError(f"phi must lie in [0, 2 pi), got {self.phi!r}")


@dataclass(frozen=True)
class FluxVector:
    """Spherical components of the probability current."""

    j_r: float
    j_theta: float
    j_phi: float


@dataclass(frozen=True)
class TubeQuadratureSpec:
    """Tensor Gauss rule over the ``(r, theta)`` half-plane.

    The radial rule is Gauss-Laguerre matched to the decay of ``|psi|^2``,
    the polar rule Gauss-Legendre in ``cos(theta)`` (strictly interior
    nodes).  ``levels`` grids are evaluated, each doubling both node counts;
    the last two must agree to ``rtol``.
    """

    radial_nodes: int = 200
    angular_nodes: int = 32
    levels: int = 2
    rtol: float = 1e-11

    def __post_init__(self):
        if self.radial_nodes < 16 or self.angular_nodes < 16:
            raise DomainError("tube quadrature needs at least 16 nodes per axis")
        if self.levels < 2:
            raise DomainError("at least two refinement levels are needed for an error estimate")


def _guard(r, theta):
    r = np.asarray(r, dtype=float)
    sin_t = np.sin(np.asarray(theta, dtype=float))
    if np.any(r < _GUARD):
        raise SingularityError("flux evaluation at r = 0")
    if np.any(sin_t < _GUARD):
        raise SingularityError("flux evaluation on the polar axis (sin(theta) = 0)")
    return r, sin_t


def azimuthal_flux_terms(q, params, correction, r, theta):
    """Separate contributions to ``j_phi`` on arrays ``r``, ``theta``.

    Returns a dict keyed by :data:`TERMS`.
    """
    r, sin_t = _guard(r, theta)
    shape = np.broadcast(r, sin_t).shape
    if q.m == 0:
        return {k: np.zeros(shape) for k in TERMS}
    amp = real_amplitude(q, r, theta)
    density = amp * amp
    pref = q.m / (r * sin_t)
    terms = {
        "ordinary": pref * density,
        "kinetic": pref * 4 * params.beta_prime * (energy_level(q.n) + 1.0 / r) * density,
        "coulomb": pref * 2 * params.coulomb_coefficient * density / r,
    }
    cross = np.zeros(shape)
    if correction is not None:
        for n2, c in correction.coefficients.items():
            cross = cross + c * real_amplitude(QuantumNumbers(n2, q.l, q.m), r, theta)
        cross = pref * 2 * cross * amp
    terms["cross"] = cross
    return {k: np.broadcast_to(v, shape) for k, v in terms.items()}


def azimuthal_flux(q, params, correction, r, theta):
    """Vectorized ``j_phi``."""
    t = azimuthal_flux_terms(q, params, correction, r, theta)
    return t["ordinary"] + t["kinetic"] + t["coulomb"] + t["cross"]


def flux_components(q, params, correction, r, theta, phi):
    """Vectorized ``(j_r, j_theta, j_phi)``; the first two vanish for stationary states."""
    j_phi = azimuthal_flux(q, params, correction, r, theta)
    zero = np.zeros_like(j_phi)
    return zero, zero, j_phi


def probability_flux(q, params, correction=None, point=None):
    """Probability current at ``point`` as a :class:`FluxVector`."""
    if point is None:
        raise DomainError("a SphericalPoint is required")
    j_r, j_t, j_p = flux_components(q, params, correction, point.r, point.theta, point.phi)
    return FluxVector(float(j_r), float(j_t), float(j_p))


def divergence(q, params, r, theta, phi, step, correction=None):
    """Central-difference ``div j`` in spherical coordinates, vectorized.

    ``step`` is a length; the angular increments are ``step / r`` and
    ``step / (r sin theta)`` so that all three differences span the same arc.
    """
    if not step > 0:
        raise DomainError(f"step must be positive, got {step!r}")
    r, theta, phi = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (r, theta, phi)))
    if np.any(step >= r):
        raise DomainError("step must be smaller than r")
    sin_t = np.sin(theta)
    dth = step / r
    dph = step / (r * sin_t)

    def j(rr, tt, pp):
        return flux_components(q, params, correction, rr, tt, pp)

    d_r = ((r + step) ** 2 * j(r + step, theta, phi)[0] - (r - step) ** 2 * j(r - step, theta, phi)[0]) / (
        2 * step * r * r
    )
    d_t = (
        np.sin(theta + dth) * j(r, theta + dth, phi)[1] - np.sin(theta - dth) * j(r, theta - dth, phi)[1]
    ) / (2 * dth * r * sin_t)
    d_p = (j(r, theta, phi + dph)[2] - j(r, theta, phi - dph)[2]) / (2 * dph * r * sin_t)
    return d_r + d_t + d_p


def divergence_check(q, params, point, step, correction=None):
    """``div j`` at a single :class:`SphericalPoint`; zero for stationary states."""
    return float(divergence(q, params, point.r, point.theta, point.phi, step, correction))


def _tube_sum(field, scale, radial_nodes, angular_nodes):
    grid = RadialGrid(scale=scale, size=radial_nodes)
    u, wu = gauss_legendre(angular_nodes)
    theta = np.arccos(u)
    sin_t = np.sqrt(1.0 - u * u)
    r = grid.nodes[:, None]
    values = field(r, theta[None, :]) * r**3 * sin_t[None, :] ** 2
    # d theta = du / sin(theta)
    weights = grid.weights[:, None] * (wu / sin_t)[None, :]
    return -math.pi / C_AU * float(np.sum(weights * values))


def _converged_tube(field, scale, spec, atol=0.0):
    values = []
    for level in range(spec.levels):
        k = 2**level
        values.append(_tube_sum(field, scale, spec.radial_nodes * k, spec.angular_nodes * k))
    value, error = values[-1], abs(values[-1] - values[-2])
    if error > spec.rtol * abs(value) + atol:
        raise ConvergenceError(f"tube quadrature did not converge (error {error:.3e})", value, error)
    return value, error


def tube_moments(q, params, correction=None, spec=None):
    """Magnetic-moment contribution of each flux term (atomic units).

    Returns a dict keyed by :data:`TERMS` with ``(value, error)`` pairs.
    The cross term is integrated per admixed level on a grid matched to the
    product ``R_nl R_n'l``.
    """
    spec = TubeQuadratureSpec() if spec is None else spec
    out = {}
    if q.m == 0:
        return {k: (0.0, 0.0) for k in TERMS}
    for name in ("ordinary", "kinetic", "coulomb"):
        out[name] = _converged_tube(
            lambda r, t, name=name: azimuthal_flux_terms(q, params, None, r, t)[name],
            0.5 * q.n,
            spec,
        )
    out["cross"] = _cross_moment(q, params, correction, spec)
    return out


def _cross_moment(q, params, correction, spec):
    if correction is None or len(correction) == 0:
        return 0.0, 0.0
    total, err = 0.0, 0.0
    for n2, c in correction.coefficients.items():
        single = CorrectionExpansion(correction.base, {n2: c}, correction.n_max)
        v, e = _converged_tube(
            lambda r, t: azimuthal_flux_terms(q, params, single, r, t)["cross"],
            q.n * n2 / (q.n + n2),
            spec,
            # the exact value is zero: judge the error against the term's natural size
            atol=spec.rtol * abs(2 * c * q.m) * BOHR_MAGNETON_AU,
        )
        total += v
        err += e
    return total, err


def magnetic_moment_numeric(q, params, correction=None, spec=None):
    """``mu_z`` from integrating the electric current over all current tubes."""
    parts = tube_moments(q, params, correction, spec)
    return sum(v for v, _ in parts.values())


def cross_term_moment(q, params, correction, spec=None):
    """Isolated moment of the wave-function-correction part of the current."""
    if correction is None or len(correction) == 0:
        return 0.0
    spec = TubeQuadratureSpec() if spec is None else spec
    if q.m == 0:
        return 0.0
    return _cross_moment(q, params, correction, spec)[0]
