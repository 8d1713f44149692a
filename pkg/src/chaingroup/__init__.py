"""Chain groups of compact groups, fusion rings of finite groups, and
numerical checks on finite-dimensional C*-dynamical systems."""

__version__ = "0.1.0"
