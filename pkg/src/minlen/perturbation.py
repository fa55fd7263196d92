"""First-order perturbation theory for the deformed hydrogen Hamiltonian.

To first order in the deformation the Hamiltonian is the ordinary one plus::

    V = beta' p^4 / 2M - e^2 [ 1/sqrt(r^2 + b^2) - 1/r
                               - (2 beta - beta')/4 (r^-1 p^2 + p^2 r^-1) ]

Between eigenstates with equal ``l`` and ``m`` every ``p^2`` is replaced by
``2M (E + e^2/r)`` acting on the adjacent eigenstate, which gives::

    <n' l m|V|n l m> = 2 M beta' E_n^2 delta_nn' + V_nn'
    V_nn' = <1/r - 1/sqrt(r^2+b^2)>
            + (M/2)(2 beta + 3 beta') (E_n + E_n') <1/r>
            + M (2 beta + beta') <1/r^2>

For ``l >= 1`` the regularized Coulomb difference may be expanded in ``b``,
yielding an operator that is linear in the deformation::

    V = beta' p^4 / 2M + (2 beta - beta') e^2 / 4 (r^-1 p^2 + p^2 r^-1 + 2 hbar^2 / r^3)

whose diagonal elements are available in closed form.
"""

from dataclasses import dataclass, field

import numpy as np

from .deformation import b_parameter
from .errors import ConvergenceError, DivergenceError, DomainError
from .hydrogen import (
    QuantumNumbers,
    _check_nl,
    energy_level,
    expectation_inv_r_power,
    radial_wavefunction,
    real_amplitude,
)
from .quadrature import RadialGrid, integrate_converged

DEFAULT_N_MAX = 12
DEFAULT_GRID_NODES = 200


def _pair_grid(n, n_prime, size, core=0.0):
    return RadialGrid.for_pair(n, n_prime, size=size, core=core)


def _pair_integral(n, n_prime, l, weight, grid, atol=1e-10, rtol=0.0):  # noqa: E741
    def integrand(r):
        return radial_wavefunction(n, l, r) * radial_wavefunction(n_prime, l, r) * r * r * weight(r)

    return integrate_converged(integrand, grid, atol=atol, rtol=rtol)


def regularized_coulomb_element(n, n_prime, l, b, grid=None):  # noqa: E741
    """``int R_n'l (r^2 + b^2)^(-1/2) R_nl r^2 dr`` in atomic units.

    Raises
    ------
    ConvergenceError
        If node doubling does not bring the error below 1e-10; the exception
        carries the last value and error estimate.
    """
    _check_nl(n, l)
    _check_nl(n_prime, l)
    if not b >= 0:
        raise DomainError(f"b must be non-negative, got {b!r}")
    if grid is None:
        grid = _pair_grid(n, n_prime, DEFAULT_GRID_NODES, core=b)
    value, _ = _pair_integral(n, n_prime, l, lambda r: 1.0 / np.sqrt(r * r + b * b), grid)
    return value


def coulomb_regularization_shift(n, n_prime, l, b, grid=None):  # noqa: E741
    """``<n'l| 1/r - 1/sqrt(r^2 + b^2) |nl>`` without cancellation.

    The difference is O(b^2) and is formed analytically as
    ``b^2 / (r s (r + s))`` with ``s = sqrt(r^2 + b^2)`` before integrating.
    """
    _check_nl(n, l)
    _check_nl(n_prime, l)
    if not b >= 0:
        raise DomainError(f"b must be non-negative, got {b!r}")
    if b == 0:
        return 0.0
    if grid is None:
        grid = _pair_grid(n, n_prime, DEFAULT_GRID_NODES, core=b)

    def weight(r):
        s = np.sqrt(r * r + b * b)
        return b * b / (r * s * (r + s))

    value, _ = _pair_integral(n, n_prime, l, weight, grid, atol=0.0, rtol=1e-9)
    return value


@dataclass(frozen=True)
class MatrixElementRequest:
    """Arguments of one radial matrix element ``V_nn'`` (shared ``l``)."""

    n: int
    n_prime: int
    l: int  # noqa: E741
    params: object
    grid_nodes: int = DEFAULT_GRID_NODES

    def __post_init__(self):
        _check_nl(self.n, self.l)
        _check_nl(self.n_prime, self.l)


def matrix_element_V(req):
    """Radial matrix element ``V_nn'`` for a :class:`MatrixElementRequest`.

    The full matrix element between ``|n l m>`` and ``|n' l m>`` is
    ``2 beta' E_n^2 delta_nn' + V_nn'``; see :func:`full_matrix_element`.
    """
    n, n2, l, p = req.n, req.n_prime, req.l, req.params
    if p.is_undeformed:
        return 0.0
    grid = _pair_grid(n, n2, req.grid_nodes)
    inv_r, _ = _pair_integral(n, n2, l, lambda r: 1.0 / r, grid)
    inv_r2, _ = _pair_integral(n, n2, l, lambda r: 1.0 / (r * r), grid)
    b = b_parameter(p)
    shift = coulomb_regularization_shift(
        n, n2, l, b, _pair_grid(n, n2, req.grid_nodes, core=b) if b > 0 else None
    )
    e_sum = energy_level(n) + energy_level(n2)
    return (
        shift
        + 0.5 * (2 * p.beta + 3 * p.beta_prime) * e_sum * inv_r
        + (2 * p.beta + p.beta_prime) * inv_r2
    )


def full_matrix_element(n, n_prime, l, params, grid_nodes=DEFAULT_GRID_NODES):  # noqa: E741
    """``<n' l m|V|n l m>`` including the diagonal ``2 beta' E_n^2`` piece."""
    v = matrix_element_V(MatrixElementRequest(n, n_prime, l, params, grid_nodes))
    if n == n_prime:
        v += 2 * params.beta_prime * energy_level(n) ** 2
    return v


def first_order_energy_shift(n, l, params):  # noqa: E741
    """Closed-form ``<n l m|V|n l m>`` from the linear operator (``l >= 1``)."""
    _check_nl(n, l)
    if l == 0:
        raise DivergenceError(
            "the linear perturbation operator has a divergent 1/r^3 term for s-states"
        )
    e = energy_level(n)
    r1, r2, r3 = (expectation_inv_r_power(n, l, k) for k in (1, 2, 3))
    kinetic = 2 * params.beta_prime * (e * e + 2 * e * r1 + r2)
    coulomb = params.coulomb_coefficient * (e * r1 + r2 + 0.5 * r3)
    return kinetic + coulomb


@dataclass(frozen=True)
class CorrectionExpansion:
    """First-order admixture ``psi_nlm + sum_n' c_n' psi_n'lm`` (bound states only)."""

    base: QuantumNumbers
    coefficients: dict = field(default_factory=dict)
    n_max: int = DEFAULT_N_MAX

    def __post_init__(self):
        for n2 in self.coefficients:
            if n2 == self.base.n or not self.base.l < n2 <= self.n_max:
                raise DomainError(f"invalid admixed level n'={n2} for base {self.base}")

    def __len__(self):
        return len(self.coefficients)


def correction_expansion(base, params, n_max=DEFAULT_N_MAX, grid_nodes=DEFAULT_GRID_NODES):
    """Coefficients ``c_n' = V_nn' / (E_n - E_n')`` for ``n' = l+1 .. n_max``, ``n' != n``."""
    if base.l == 0:
        raise DivergenceError("wave-function corrections are restricted to l >= 1")
    if n_max <= base.n:
        raise DomainError(f"n_max must exceed n={base.n}, got {n_max}")
    coefficients = {}
    for n2 in range(base.l + 1, n_max + 1):
        if n2 == base.n:
            continue
        v = matrix_element_V(MatrixElementRequest(base.n, n2, base.l, params, grid_nodes))
        coefficients[n2] = v / (energy_level(base.n) - energy_level(n2))
    return CorrectionExpansion(base, coefficients, n_max)


def correction_amplitude(expansion, r, theta):
    """Real amplitude of ``sum_n' c_n' psi_n'lm`` without the azimuthal phase."""
    q = expansion.base
    total = np.zeros(np.broadcast(np.asarray(r), np.asarray(theta)).shape)
    for n2, c in expansion.coefficients.items():
        total = total + c * real_amplitude(QuantumNumbers(n2, q.l, q.m), r, theta)
    return total


def corrected_wavefunction(expansion, point):
    """``psi^(1)_nlm`` at ``point``."""
    q = expansion.base
    amp = real_amplitude(q, point.r, point.theta) + correction_amplitude(
        expansion, point.r, point.theta
    )
    return complex(amp * np.exp(1j * q.m * point.phi))


__all__ = [
    "ConvergenceError",
    "CorrectionExpansion",
    "MatrixElementRequest",
    "coulomb_regularization_shift",
    "correction_expansion",
    "corrected_wavefunction",
    "first_order_energy_shift",
    "full_matrix_element",
    "matrix_element_V",
    "regularized_coulomb_element",
]
