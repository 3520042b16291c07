"""Numerical toolkit for the glide-reflection form of the free spin-1/2
wave equation, distorted-metric effective potentials, and relativistic
bound-state solvers."""

__version__ = "0.1.0"
