"""hierfp: iterative projection solver for hierarchical fixed-point problems."""

__version__ = "0.0.1"
