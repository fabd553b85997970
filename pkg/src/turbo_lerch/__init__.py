"""Special functions and verification harness for Hurwitz-Lerch zeta integral identities."""

__version__ = "0.1.0"
