"""Good deformation data in characteristic p: exact arithmetic, Belyi-type
realizability, exhaustive finite-field search and the local lifting criterion."""

__version__ = "0.1.0"
