"""Numerical core: special functions, combinatorics, quadrature and Phi."""
