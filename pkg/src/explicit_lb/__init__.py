"""Explicit GRH bounds for L'/L(s, chi) and zeta'/zeta near the 1-line.

Subpackages are imported on demand; this module only fixes the version.
"""
__version__ = "0.1.0"

__all__ = ["__version__"]
