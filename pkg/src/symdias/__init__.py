"""Polynomial identities for the symmetrized Jordan diproduct, by exact linear algebra."""

__version__ = "0.1.0"
