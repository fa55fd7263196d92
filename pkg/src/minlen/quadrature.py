"""Quadrature rules on the half line and the radial integration engine.

The radial integrands met in this package are polynomials times a decaying
exponential, so a Gauss-Laguerre rule scaled to the decay length of the
integrand is essentially exact.  The rule is built here rather than taken
from ``scipy.special.roots_laguerre`` because the latter overflows beyond a
few hundred nodes, and node doubling is how errors are estimated.
"""

from dataclasses import dataclass, replace
from functools import cached_property, lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError, DomainError, EvaluationError

_RESCALE = 1e100


def _laguerre_tail(n, x):
    """Return ``(p_n, p_{n-1}, log_scale)`` with ``L_k(x) = p_k * exp(log_scale)``.

    The three-term recurrence is rescaled on the fly so that large arguments
    do not overflow.
    """
    x = np.asarray(x)
    prev = np.ones_like(x)
    cur = 1.0 - x
    log_scale = np.zeros_like(x)
    if n == 0:
        return prev, np.zeros_like(x), log_scale
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
        big = np.maximum(np.abs(cur), np.abs(prev))
        hit = big > _RESCALE
        if np.any(hit):
            cur = np.where(hit, cur / big, cur)
            prev = np.where(hit, prev / big, prev)
            log_scale = log_scale + np.where(hit, np.log(np.where(hit, big, 1.0)), 0.0)
    return cur, prev, log_scale


@lru_cache(maxsize=32)
def gauss_laguerre(n):
    """Nodes and exponentially scaled weights of the n-point Gauss-Laguerre rule.

    Returns ``(x, w)`` with ``sum(w * f(x))`` approximating the integral of
    ``f`` over ``[0, inf)`` (the ``exp(-x)`` weight already folded into ``w``).
    """
    if n < 1:
        raise DomainError(f"rule size must be positive, got {n}")
    k = np.arange(n, dtype=float)
    # Newton polish and weights in extended precision: small nodes lose
    # relative accuracy to cancellation in the recurrence otherwise.
    x = eigh_tridiagonal(2 * k + 1, k[1:], eigvals_only=True).astype(np.longdouble)
    for _ in range(3):
        pn, pn1, _ = _laguerre_tail(n, x)
        x = x - x * pn / (n * (pn - pn1))
    # w = x / (n L_{n-1}(x))^2 at a root of L_n; free of the noisy L_n value.
    _, pn1, log_scale = _laguerre_tail(n, x)
    log_w = np.log(x) + x - 2 * np.log(n) - 2 * (np.log(np.abs(pn1)) + log_scale)
    w = np.exp(log_w).astype(float)
    x = x.astype(float)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=32)
def gauss_legendre(n):
    """Gauss-Legendre nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class RadialGrid:
    """Quadrature grid on ``r in (0, inf)``.

    Parameters
    ----------
    scale : float
        Decay length of the integrand; nodes are ``scale * x_laguerre``.
        For a product ``R_nl R_n'l`` the matched choice is ``n n' / (n + n')``.
    size : int
        Number of Gauss-Laguerre nodes.
    core : float
        If positive, the interval ``[0, scale]`` is covered by Gauss-Legendre
        panels with geometrically growing widths starting at ``core``, and the
        Laguerre rule only covers the tail.  Used for integrands with
        structure on a length much shorter than ``scale``.
    """

    scale: float = 1.0
    size: int = 200
    core: float = 0.0

    def __post_init__(self):
        if not self.scale > 0:
            raise DomainError(f"grid scale must be positive, got {self.scale!r}")
        if self.size < 16:
            raise DomainError(f"grid needs at least 16 nodes, got {self.size}")
        if self.core < 0:
            raise DomainError(f"core length must be non-negative, got {self.core!r}")

    @classmethod
    def for_pair(cls, n, n_prime, size=200, core=0.0):
        """Grid matched to the decay of ``R_n R_n'``."""
        return cls(scale=n * n_prime / (n + n_prime), size=size, core=core)

    def refined(self):
        return replace(self, size=2 * self.size)

    @cached_property
    def _rule(self):
        xl, wl = gauss_laguerre(self.size)
        if not 0 < self.core < self.scale:
            return self.scale * xl, self.scale * wl
        edges = [0.0, self.core]
        while edges[-1] < self.scale:
            edges.append(2 * edges[-1])
        xg, wg = gauss_legendre(max(8, self.size // 10))
        nodes, weights = [], []
        for lo, hi in zip(edges[:-1], edges[1:]):
            half = 0.5 * (hi - lo)
            nodes.append(lo + half * (xg + 1))
            weights.append(half * wg)
        nodes.append(edges[-1] + self.scale * xl)
        weights.append(self.scale * wl)
        return np.concatenate(nodes), np.concatenate(weights)

    @property
    def nodes(self):
        return self._rule[0]

    @property
    def weights(self):
        return self._rule[1]


def _weighted_sum(f, grid):
    values = np.asarray(f(grid.nodes), dtype=float)
    if not np.all(np.isfinite(values)):
        bad = grid.nodes[~np.isfinite(values)]
        raise EvaluationError(f"integrand not finite at r = {bad[:3]}")
    return float(np.dot(grid.weights, values))


def integrate_radial(f, grid=None):
    """Integrate a vectorized radial integrand over ``(0, inf)``.

    The integrand is evaluated on ``grid`` and on its refinement with twice
    the nodes.

    Returns
    -------
    value : float
        Result on the refined grid.
    error : float
        Absolute difference between the two levels.
    """
    grid = RadialGrid() if grid is None else grid
    coarse = _weighted_sum(f, grid)
    fine = _weighted_sum(f, grid.refined())
    return fine, abs(fine - coarse)


def integrate_converged(f, grid=None, atol=1e-10, rtol=0.0, max_doublings=3):
    """Refine ``grid`` until the doubling error is below ``atol + rtol*|value|``."""
    grid = RadialGrid() if grid is None else grid
    for _ in range(max_doublings + 1):
        value, error = integrate_radial(f, grid)
        if error <= atol + rtol * abs(value):
            return value, error
        grid = grid.refined()
    raise ConvergenceError(
        f"radial quadrature did not converge (error {error:.3e})", value, error
    )
