"""Polynomial symmetries of linear differential systems over Q(x) and the
constraints they place on the differential Galois group."""

__version__ = "0.1.0"
