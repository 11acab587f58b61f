"""Exact Lagrangian quantum and Floer homology under a monotone one-point blow-up."""

__version__ = "0.1.0"
