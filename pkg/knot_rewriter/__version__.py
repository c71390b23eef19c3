"""Version information for knot-rewriter package."""

__version__ = "1.0.0"
__version_info__ = tuple(map(int, __version__.split(".")))

# Package metadata
__title__ = "knot-rewriter"
__description__ = "Gauss diagram rewriting engine for virtual knots with forbidden moves"
__author__ = "Knot Rewriter Team"
__license__ = "MIT"

# Development status
__status__ = "Beta"

# Supported Python versions
__python_requires__ = ">=3.8"
