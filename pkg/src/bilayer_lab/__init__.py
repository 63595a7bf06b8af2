"""Two-layer thin-film toolbox: composite stationary profiles, existence
diagrams and a fully implicit finite-difference simulator."""

from .potential import PotentialParams, phi, phi_eps, pi_eps, pi_eps_deriv

__version__ = "0.1.0"

__all__ = ["PotentialParams", "phi", "phi_eps", "pi_eps", "pi_eps_deriv", "__version__"]
