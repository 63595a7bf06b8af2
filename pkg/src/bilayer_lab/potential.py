"""Intermolecular potential and disjoining pressure.

The two liquid layers interact with the substrate through a Lennard-Jones
type potential with algebraic attraction/repulsion exponents (n, l).  All
leading-order results of the library depend on it only through the well
depth ``1/n - 1/l``; the simulator additionally needs the disjoining
pressure and its derivative at finite heights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "PotentialParams",
    "phi",
    "phi_eps",
    "pi_eps",
    "pi_eps_deriv",
]

# Heights below HEIGHT_GUARD * eps are rejected instead of evaluated: the
# repulsive term h**-(l+1) overflows long before a legitimate simulator
# state gets there.
HEIGHT_GUARD = 1e-3


@dataclass(frozen=True)
class PotentialParams:
    """Exponents (n, l) and length scale eps of the intermolecular potential."""

    n: int = 2
    l: int = 3
    eps: float = 0.01

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.l, int)):
            raise TypeError("exponents n, l must be integers")
        if not self.l > self.n >= 2:
            raise ValueError(f"exponents must satisfy l > n >= 2, got n={self.n}, l={self.l}")
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")

    @property
    def well_depth(self) -> float:
        """Absolute value of the potential minimum, attained at scaled height 1."""
        return 1.0 / self.n - 1.0 / self.l


def _check_positive(p: PotentialParams, h, scaled: bool) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    floor = HEIGHT_GUARD if scaled else HEIGHT_GUARD * p.eps
    if np.any(h < floor) or not np.all(np.isfinite(h)):
        raise ValueError(f"height below {floor:g} (or non-finite); potential not evaluated")
    return h


def phi(p: PotentialParams, h):
    """Potential density at unscaled height: 1/(l h^l) - 1/(n h^n)."""
    h = _check_positive(p, h, scaled=True)
    return 1.0 / (p.l * h**p.l) - 1.0 / (p.n * h**p.n)


def phi_eps(p: PotentialParams, h1, h):
    """Two-layer potential phi(h1/eps) + phi(h/eps); minimal at h1 = h = eps."""
    return phi(p, np.asarray(h1, dtype=float) / p.eps) + phi(p, np.asarray(h, dtype=float) / p.eps)


def pi_eps(p: PotentialParams, h):
    """Disjoining pressure (1/eps) [(eps/h)^(n+1) - (eps/h)^(l+1)].

    Vanishes at h = eps, positive above, negative below.
    """
    h = _check_positive(p, h, scaled=False)
    r = p.eps / h
    return (r ** (p.n + 1) - r ** (p.l + 1)) / p.eps


def pi_eps_deriv(p: PotentialParams, h):
    """Analytic derivative of ``pi_eps`` with respect to the height."""
    h = _check_positive(p, h, scaled=False)
    r = p.eps / h
    return (-(p.n + 1) * r ** (p.n + 1) + (p.l + 1) * r ** (p.l + 1)) / (p.eps * h)
