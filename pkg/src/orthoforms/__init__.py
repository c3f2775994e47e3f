"""Orthogonal modular forms of lattice-index Jacobi type, their lifts and the
van Geemen-Sarti coefficient identities."""

__version__ = "0.1.0"
