"""Elementary leading-order building blocks: contact angles, contact-line
inner profiles and ultra-thin-film floors.

A contact line (CL) is the O(eps)-wide region where one layer drops from
O(1) height to the ultra-thin film.  Each of the four CL types carries a
macroscopic slope (contact angle) fixed by the surface-tension ratio and
the potential well depth; the inner transition profile solves a separable
first-order ODE and is obtained here by quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .potential import PotentialParams, phi

__all__ = [
    "CL_TYPES",
    "contact_angle",
    "cl_inner_profile",
    "CLInnerProfile",
    "utf_floor",
    "UTFFloor",
]

CL_TYPES = ("I", "II", "III", "IV")


def contact_angle(cl_type: str, sigma: float, well_depth: float) -> float:
    """Macroscopic slope magnitude of the transitioning layer at a CL."""
    if sigma <= 0 or well_depth <= 0:
        raise ValueError("sigma and well_depth must be positive")
    if cl_type == "I":
        return np.sqrt(2.0 * well_depth / sigma)
    if cl_type == "II":
        return np.sqrt(2.0 * (sigma + 1.0) * well_depth / sigma)
    if cl_type == "III":
        return np.sqrt(2.0 * well_depth / (sigma + 1.0))
    if cl_type == "IV":
        return np.sqrt(2.0 * well_depth)
    raise ValueError(f"unknown contact-line type {cl_type!r}; expected one of {CL_TYPES}")


# Which layer transitions at each CL type, its companion layer, and the
# factor multiplying the transition corrector in the companion layer.
CL_TRANSITION_LAYER = {"I": "h1", "II": "h", "III": "h1", "IV": "h"}


def cl_companion_factor(cl_type: str, sigma: float) -> float:
    if cl_type == "I":
        return -1.0
    if cl_type == "II":
        return -1.0 / (sigma + 1.0)
    # Types III/IV: companion layer stays at its floor; no corrector known.
    return 0.0


@dataclass
class CLInnerProfile:
    """Sampled inner transition profile of one CL type.

    ``z`` is the stretched coordinate (x + s)/eps, ``value`` the transition
    layer height in units of eps.  The profile rises monotonically from 1 on
    the ultra-thin-film side to the linear far field ``slope * z``; the
    z-offset is fixed so the far-field asymptote passes through the origin.
    """

    cl_type: str
    slope: float
    z: np.ndarray
    value: np.ndarray

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        out = np.interp(z, self.z, self.value, left=1.0, right=np.nan)
        big = z > self.z[-1]
        if np.any(big):
            out = np.where(big, self.slope * z, out)
        return out

    def excess(self, z):
        """Transition value minus the outer corner max(1, slope*z).

        Non-negative bump decaying to zero on both sides; adding eps times
        this to the exact piecewise profile mollifies the corner.
        """
        z = np.asarray(z, dtype=float)
        return self(z) - np.maximum(1.0, self.slope * z)


def cl_inner_profile(
    cl_type: str,
    sigma: float,
    p: PotentialParams,
    half_width: float = 10.0,
    n_samples: int = 400,
    delta: float = 1e-6,
) -> CLInnerProfile:
    """Quadrature of the separable CL equation |u'(z)| = g(u).

    For types I and II the first integrals give
    g = sqrt((2/sigma)[phi(u) - phi(1)]) and the same with an extra
    (sigma+1) factor; types III/IV reuse the quadrature normalized to their
    macroscopic angle, since only the angle is known for them.
    """
    if half_width < 5.0:
        raise ValueError("half_width must be at least 5 (in eps units)")
    theta = contact_angle(cl_type, sigma, p.well_depth)
    phi1 = phi(p, 1.0)  # == -well_depth

    def speed(u):
        # theta * sqrt((phi(u) - phi(1)) / |phi(1)|); positive for u > 1
        return theta * np.sqrt(np.maximum(phi(p, u) - phi1, 0.0) / -phi1)

    # Integrate z(u) = int du / g(u) on a graded grid from 1 + delta.  The
    # endpoint singularity ~ 1/(u-1) is integrable after the delta cut.
    u_top = max(theta * (half_width + 5.0) * 4.0, 50.0)
    u = 1.0 + delta * (u_top / delta) ** np.linspace(0.0, 1.0, 20 * n_samples)
    g = speed(u)
    if not np.all(np.isfinite(g[1:])) or np.any(g[1:] <= 0):
        raise ArithmeticError(
            f"CL quadrature failed: non-positive transition speed for type {cl_type}, sigma={sigma}"
        )
    inv = 1.0 / g
    z = np.concatenate(([0.0], np.cumsum(0.5 * (inv[1:] + inv[:-1]) * np.diff(u))))
    # Shift so the far-field asymptote u ~ theta z passes through z = 0.
    # Algebraic tail correction: phi(u) ~ -1/(n u^n) gives
    # 1/g - 1/theta ~ -phi(u)/(2 theta |phi(1)|).
    u_end = u[-1]
    tail = u_end ** (1 - p.n) / (2.0 * theta * (-phi1) * p.n * (p.n - 1))
    z -= z[-1] + tail - u_end / theta
    return CLInnerProfile(cl_type=cl_type, slope=theta, z=z, value=u)


@dataclass(frozen=True)
class UTFFloor:
    """Second-order ultra-thin-film heights eps + eps^2 * lambda/(l - n)."""

    h1_floor: float
    h_floor: float


def utf_floor(lambda1_0: float, lambda2_0: float, p: PotentialParams) -> UTFFloor:
    """UTF floors for given leading-order pressures (undetermined ones pass 0)."""
    c = p.eps**2 / (p.l - p.n)
    return UTFFloor(h1_floor=p.eps + c * lambda2_0, h_floor=p.eps + c * lambda1_0)
