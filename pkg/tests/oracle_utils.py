"""Brute-force reconstruction oracle used by the tests.

Recovers point values from cell averages the long way: build the primitive
function at the stencil's interface points, interpolate it with a
polynomial, differentiate, evaluate.  Independent of the closed-form
coefficient tables in the package.
"""

import numpy as np

GAUSS_XI = np.sqrt(3.0 / 5.0)


def primitive_point_value(averages, cells, x):
    """p(x) from unit-width cell averages over the given cell indices.

    ``cells`` are consecutive integers; cell j spans [j-1/2, j+1/2].
    """
    pts = [cells[0] - 0.5] + [j + 0.5 for j in cells]
    prim = np.concatenate([[0.0], np.cumsum(averages)])
    poly = np.polynomial.Polynomial.fit(pts, prim, deg=len(pts) - 1)
    return poly.deriv()(x)


def oracle_substencil(window5, s, x):
    """Candidate s (0, 1, 2) of the five-cell window evaluated at x."""
    cells = [-2 + s, -1 + s, s]
    return primitive_point_value(np.asarray(window5)[s : s + 3], cells, x)


def oracle_big(window5, x):
    """Quartic reconstruction over the whole window evaluated at x."""
    return primitive_point_value(np.asarray(window5), [-2, -1, 0, 1, 2], x)


NODE_X = {
    "edge": 0.5,
    "minus": -0.5 * GAUSS_XI,
    "center": 0.0,
    "plus": 0.5 * GAUSS_XI,
}
