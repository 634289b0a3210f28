"""Holonomy of 2-term Lie algebroid actions.

Thin wrapper around the native module: built-in models, discrete A-paths and
A-homotopies, parallel transport, the double-integral homotopy holonomy, and
sphere-period / integrability reports.
"""

try:
    from ._core import *  # noqa: F401,F403
    from . import _core as _native  # noqa: F401
except ImportError:  # in-tree test runs put _core next to the package
    from _core import *  # noqa: F401,F403
    import _core as _native  # noqa: F401

__all__ = [name for name in dir(_native) if not name.startswith("_")]
__version__ = "0.1.0"
