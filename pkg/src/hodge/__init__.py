"""
Hodge package.

Hodge diamonds of supported varieties and the exponent chi(X, O_X, r).
"""

from .hodge_logic import HodgeDiamond, characteristic_caveat, chi_O, hodge_of, hypersurface_middle_hodge

__all__ = ["HodgeDiamond", "characteristic_caveat", "chi_O", "hodge_of", "hypersurface_middle_hodge"]
