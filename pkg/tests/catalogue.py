"""The fixed set of two-variable phases used by the exact acceptance checks."""

from newton_osc.polynomial import Polynomial

CATALOGUE = [
    "x1^2*x2",
    "x1^2*x2^2",
    "x1^2 + x2^2",
    "x1^3 + x2^2",
    "x1^4 + x2^4",
    "x1^2*x2 + x2^5",
    "x1^3 + x1*x2^2",
    "x1^6 + x1^2*x2^2 + x2^6",
]

# a few extra phases in three variables, exercised by the structural tests
EXTRA_3D = [
    "x1^2 + x2^2 + x3^2",
    "x1^4 + x2^4 + x3^4 + x1*x2*x3",
    "x1^2*x2*x3 + x2^4 + x3^6",
]


def phases():
    return [Polynomial.parse(s, 2) for s in CATALOGUE]


def phases_3d():
    return [Polynomial.parse(s, 3) for s in EXTRA_3D]
