"""Spherical unipotent classes and outer involutions in bad characteristic.

Root-system criterion checks, (lambda, epsilon) class labels in
characteristic 2, matrix models over GF(2^k) and a brute-force census.
"""

__version__ = "0.1.0"
