"""Fifth-order WENO reconstruction from cell averages.

Reconstructs interface and interior Gauss-point values of a function from
five consecutive cell averages (the big stencil ``i-2 .. i+2``), combining
three quadratic candidates with data-dependent nonlinear weights.  Five
weight families are provided:

* ``js``  -- classical smoothness-indicator weights,
* ``m``   -- Henrick-mapped weights,
* ``z``   -- global-indicator weights built on ``tau = |beta0 - beta2|``,
* ``zr``  -- Z-type weights built on p-th roots of the indicators,
* ``zl``  -- Z-type weights built on a logarithmic indicator
  ``tau = |ln((1+beta0)/(1+beta2))| / p`` raised to the power ``q``,

plus ``linear`` which bypasses the nonlinearity entirely.

Coefficient tables are kept as exact rationals (terms in ``sqrt(15)`` are
stored as rational pairs) and rendered to floating point once at import, so
reconstructed values are reproducible bit-for-bit across platforms with the
same FPU semantics.

All reconstruction kernels operate on windows stacked along the last axis;
leading axes (solution components, rows of a 2D grid) broadcast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConfigurationError

F = Fraction
SQRT15 = math.sqrt(15.0)

# A coefficient is (a, b) meaning a + b*sqrt(15).
Coeff = tuple[Fraction, Fraction]


def _c(a, b=0) -> Coeff:
    return (F(a), F(b))


def _render(table):
    """Render a nested tuple of (rational, rational*sqrt15) pairs to floats."""
    return np.array(
        [[float(a) + float(b) * SQRT15 for (a, b) in row] for row in table]
    )


# ---------------------------------------------------------------------------
# Exact coefficient tables.
#
# Candidate rows are the three quadratic reconstructions over the substencils
# {i-2,i-1,i}, {i-1,i,i+1}, {i,i+1,i+2}, expressed against the full window
# (vbar_{i-2}, ..., vbar_{i+2}).  "Big" rows are the quartic reconstruction
# over the whole window.  Evaluation points: the right cell edge x_{i+1/2}
# and the three Gauss-Legendre nodes x_i + {-xi, 0, +xi} * dx/2 with
# xi = sqrt(3/5).
# ---------------------------------------------------------------------------

_ZERO = _c(0)

CAND_EDGE_EXACT = (
    (_c(F(1, 3)), _c(F(-7, 6)), _c(F(11, 6)), _ZERO, _ZERO),
    (_ZERO, _c(F(-1, 6)), _c(F(5, 6)), _c(F(1, 3)), _ZERO),
    (_ZERO, _ZERO, _c(F(1, 3)), _c(F(5, 6)), _c(F(-1, 6))),
)
BIG_EDGE_EXACT = (
    (_c(F(1, 30)), _c(F(-13, 60)), _c(F(47, 60)), _c(F(9, 20)), _c(F(-1, 20))),
)
D_EDGE_EXACT = (_c(F(1, 10)), _c(F(3, 5)), _c(F(3, 10)))

CAND_GAUSS_MINUS_EXACT = (
    (_c(F(1, 30), F(-1, 20)), _c(F(-1, 15), F(1, 5)), _c(F(31, 30), F(-3, 20)), _ZERO, _ZERO),
    (_ZERO, _c(F(1, 30), F(1, 20)), _c(F(14, 15)), _c(F(1, 30), F(-1, 20)), _ZERO),
    (_ZERO, _ZERO, _c(F(31, 30), F(3, 20)), _c(F(-1, 15), F(-1, 5)), _c(F(1, 30), F(1, 20))),
)
BIG_GAUSS_MINUS_EXACT = (
    (
        _c(F(-3, 800), F(-11, 1200)),
        _c(F(29, 600), F(41, 600)),
        _c(F(1093, 1200)),
        _c(F(29, 600), F(-41, 600)),
        _c(F(-3, 800), F(11, 1200)),
    ),
)
D_GAUSS_MINUS_EXACT = (
    _c(F(126, 655), F(71, 5240)),
    _c(F(403, 655)),
    _c(F(126, 655), F(-71, 5240)),
)

CAND_GAUSS_CENTER_EXACT = (
    (_c(F(-1, 24)), _c(F(1, 12)), _c(F(23, 24)), _ZERO, _ZERO),
    (_ZERO, _c(F(-1, 24)), _c(F(13, 12)), _c(F(-1, 24)), _ZERO),
    (_ZERO, _ZERO, _c(F(23, 24)), _c(F(1, 12)), _c(F(-1, 24))),
)
BIG_GAUSS_CENTER_EXACT = (
    (_c(F(3, 640)), _c(F(-29, 480)), _c(F(1067, 960)), _c(F(-29, 480)), _c(F(3, 640))),
)
# The center-node linear weights are not all positive; they are split into
# two positive convex sets gamma+/- scaled by sigma+/- so that
# d_s = sigma+ * gamma+_s - sigma- * gamma-_s.
D_GAUSS_CENTER_EXACT = (_c(F(-9, 80)), _c(F(49, 40)), _c(F(-9, 80)))
GAMMA_PLUS_EXACT = (F(9, 214), F(98, 107), F(9, 214))
GAMMA_MINUS_EXACT = (F(9, 67), F(49, 67), F(9, 67))
SIGMA_PLUS_EXACT = F(107, 40)
SIGMA_MINUS_EXACT = F(67, 40)

def _mirror_cand(table):
    """Reflect a candidate table: swap substencils and reverse each row."""
    return tuple(tuple(reversed(row)) for row in reversed(table))


CAND_GAUSS_PLUS_EXACT = _mirror_cand(CAND_GAUSS_MINUS_EXACT)
BIG_GAUSS_PLUS_EXACT = (tuple(reversed(BIG_GAUSS_MINUS_EXACT[0])),)
D_GAUSS_PLUS_EXACT = tuple(reversed(D_GAUSS_MINUS_EXACT))

CAND_EDGE = _render(CAND_EDGE_EXACT)
BIG_EDGE = _render(BIG_EDGE_EXACT)[0]
D_EDGE = np.array([float(a) + float(b) * SQRT15 for a, b in D_EDGE_EXACT])

CAND_GAUSS_MINUS = _render(CAND_GAUSS_MINUS_EXACT)
CAND_GAUSS_CENTER = _render(CAND_GAUSS_CENTER_EXACT)
CAND_GAUSS_PLUS = _render(CAND_GAUSS_PLUS_EXACT)
BIG_GAUSS_MINUS = _render(BIG_GAUSS_MINUS_EXACT)[0]
BIG_GAUSS_CENTER = _render(BIG_GAUSS_CENTER_EXACT)[0]
BIG_GAUSS_PLUS = _render(BIG_GAUSS_PLUS_EXACT)[0]
D_GAUSS_MINUS = np.array([float(a) + float(b) * SQRT15 for a, b in D_GAUSS_MINUS_EXACT])
D_GAUSS_PLUS = np.array([float(a) + float(b) * SQRT15 for a, b in D_GAUSS_PLUS_EXACT])
GAMMA_PLUS = np.array([float(g) for g in GAMMA_PLUS_EXACT])
GAMMA_MINUS = np.array([float(g) for g in GAMMA_MINUS_EXACT])
SIGMA_PLUS = float(SIGMA_PLUS_EXACT)
SIGMA_MINUS = float(SIGMA_MINUS_EXACT)

# Column-reversed candidate table: row s applied to the original window
# equals candidate s of the reflected window, i.e. the right-biased value at
# the *left* edge x_{i-1/2}.  Pair with weights of the reversed beta triple.
CAND_EDGE_REV = np.ascontiguousarray(CAND_EDGE[:, ::-1])

# The smoothness indicators are built from first differences so constant
# (and, for the curvature terms, linear) data cancel exactly; the Z-type
# global indicators divide by eps = 1e-40 and would amplify any spurious
# residue on flat regions.

GAUSS_NODES = ("minus", "center", "plus")
# 3-point Gauss-Legendre rule on [-1, 1], ordered to match GAUSS_NODES.
GAUSS_XI = math.sqrt(3.0 / 5.0)
GAUSS_WEIGHTS = np.array([5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0])

_FAMILIES = ("js", "m", "z", "zr", "zl", "linear")


@dataclass(frozen=True)
class WeightScheme:
    """Selects a nonlinear-weight family and its parameters.

    ``eps`` guards the denominators.  ``p`` is the root exponent of the
    ``zr`` family and the logarithm tuner of ``zl``; ``q`` is the power
    applied to the ``zl`` indicator ratio.  The classical defaults are
    1e-6 for ``js`` and 1e-40 for the other families.
    """

    family: str
    eps: float = 1e-40
    p: float = 1.0
    q: float = 1.0

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ConfigurationError(f"unknown weight family {self.family!r}")
        if self.family != "linear" and not self.eps > 0.0:
            raise ConfigurationError("eps must be positive")
        if self.family == "zr" and not self.p >= 1.0:
            raise ConfigurationError("zr requires p >= 1")
        if self.family == "zl":
            if not self.p > 0.0:
                raise ConfigurationError("zl requires p > 0")
            if not self.q >= 1.0:
                raise ConfigurationError("zl requires q >= 1")

    @classmethod
    def js(cls, eps=1e-6):
        return cls("js", eps=eps)

    @classmethod
    def m(cls, eps=1e-40):
        return cls("m", eps=eps)

    @classmethod
    def z(cls, eps=1e-40):
        return cls("z", eps=eps)

    @classmethod
    def zr(cls, p=2.0, eps=1e-40):
        return cls("zr", eps=eps, p=p)

    @classmethod
    def zl(cls, p=1.0, q=1.0, eps=1e-40):
        return cls("zl", eps=eps, p=p, q=q)

    @classmethod
    def linear(cls):
        return cls("linear")

    @property
    def label(self):
        base = self.family.upper()
        if self.family == "zr":
            return f"ZR(p={self.p:g})"
        if self.family == "zl":
            return f"ZL(p={self.p:g},q={self.q:g})"
        if self.family == "linear":
            return "Linear"
        return base


def smoothness_indicators(window):
    """Smoothness indicators (beta0, beta1, beta2) of a five-cell window.

    ``window`` has the five cell averages along its last axis; leading axes
    broadcast.  Constant substencils give exactly zero.
    """
    w = np.asarray(window, dtype=float)
    d = w[..., 1:] - w[..., :-1]
    curv = d[..., 1:] - d[..., :-1]
    beta = (13.0 / 12.0) * (curv * curv)
    out = np.empty(beta.shape)
    out[..., 0] = beta[..., 0] + 0.25 * (3.0 * d[..., 1] - d[..., 0]) ** 2
    out[..., 1] = beta[..., 1] + 0.25 * (d[..., 1] + d[..., 2]) ** 2
    out[..., 2] = beta[..., 2] + 0.25 * (3.0 * d[..., 2] - d[..., 3]) ** 2
    return out


def _windows5(u):
    """Read-only strided view of all five-cell windows along the last axis."""
    K = u.shape[-1] - 4
    shape = u.shape[:-1] + (K, 5)
    strides = u.strides[:-1] + (u.strides[-1], u.strides[-1])
    return np.lib.stride_tricks.as_strided(u, shape=shape, strides=strides,
                                           writeable=False)


def _beta_windows(u):
    """Smoothness triples of every window of a padded array: (..., N-4, 3).

    Same arithmetic as :func:`smoothness_indicators`, evaluated from global
    difference arrays (bit-identical results, far fewer array operations).
    """
    d = u[..., 1:] - u[..., :-1]
    curv = d[..., 1:] - d[..., :-1]
    K = u.shape[-1] - 4
    c2 = 13.0 / 12.0
    out = np.empty(u.shape[:-1] + (K, 3))
    c = curv[..., :K]
    out[..., 0] = c2 * (c * c) \
        + 0.25 * (3.0 * d[..., 1:K + 1] - d[..., :K]) ** 2
    c = curv[..., 1:K + 1]
    out[..., 1] = c2 * (c * c) \
        + 0.25 * (d[..., 1:K + 1] + d[..., 2:K + 2]) ** 2
    c = curv[..., 2:K + 2]
    out[..., 2] = c2 * (c * c) \
        + 0.25 * (3.0 * d[..., 2:K + 2] - d[..., 3:K + 3]) ** 2
    return out


def henrick_map(omega, d):
    """Henrick mapping g(omega); fixes d, 0 and 1, flattens near omega=d."""
    omega = np.asarray(omega, dtype=float)
    d = np.asarray(d, dtype=float)
    return omega * (d + d * d - 3.0 * d * omega + omega * omega) / (
        d * d + (1.0 - 2.0 * d) * omega
    )


def _normalize(alpha):
    return alpha / alpha.sum(axis=-1, keepdims=True)


def weights_js(beta, d=D_EDGE, eps=1e-6):
    beta = np.asarray(beta, dtype=float)
    alpha = d / (beta + eps) ** 2
    return _normalize(alpha)


def weights_m(beta, d=D_EDGE, eps=1e-40):
    alpha = henrick_map(weights_js(beta, d, eps), d)
    return _normalize(alpha)


def weights_z(beta, d=D_EDGE, eps=1e-40):
    beta = np.asarray(beta, dtype=float)
    tau = np.abs(beta[..., 0] - beta[..., 2])[..., None]
    alpha = d * (1.0 + tau / (beta + eps))
    return _normalize(alpha)


def weights_zr(beta, d=D_EDGE, eps=1e-40, p=2.0):
    beta = np.asarray(beta, dtype=float)
    root = beta ** (1.0 / p)
    tau = np.abs(root[..., 0] - root[..., 2])[..., None]
    alpha = d * (1.0 + (tau / (root + eps)) ** p)
    return _normalize(alpha)


def weights_zl(beta, d=D_EDGE, eps=1e-40, p=1.0, q=1.0):
    beta = np.asarray(beta, dtype=float)
    lg = np.log1p(beta)
    tau = (np.abs(lg[..., 0] - lg[..., 2]) / p)[..., None]
    alpha = d * (1.0 + (tau / (beta + eps)) ** q)
    return _normalize(alpha)


def nonlinear_weights(beta, scheme: WeightScheme, d=D_EDGE):
    """Nonlinear weights of the given family for indicator triples ``beta``.

    ``d`` are the linear weights of the evaluation point (any positive
    convex triple; the Gauss-point tables pass their own).
    """
    fam = scheme.family
    if fam == "linear":
        beta = np.asarray(beta, dtype=float)
        return np.broadcast_to(np.asarray(d, dtype=float), beta.shape).copy()
    if fam == "js":
        return weights_js(beta, d, scheme.eps)
    if fam == "m":
        return weights_m(beta, d, scheme.eps)
    if fam == "z":
        return weights_z(beta, d, scheme.eps)
    if fam == "zr":
        return weights_zr(beta, d, scheme.eps, scheme.p)
    if fam == "zl":
        return weights_zl(beta, d, scheme.eps, scheme.p, scheme.q)
    raise ConfigurationError(f"unknown weight family {fam!r}")


def reconstruct_interface(window, scheme: WeightScheme, orientation="left"):
    """Interface value from one five-cell window.

    ``orientation='left'`` gives the left-biased value at the right edge of
    the center cell (v-); ``'right'`` reverses the window first and gives
    the right-biased value at the left edge (v+).
    """
    w = np.asarray(window, dtype=float)
    if orientation == "right":
        w = w[..., ::-1]
    elif orientation != "left":
        raise ConfigurationError(f"unknown orientation {orientation!r}")
    beta = smoothness_indicators(w)
    omega = nonlinear_weights(beta, scheme)
    cand = w @ CAND_EDGE.T
    return (omega * cand).sum(axis=-1)


def big_stencil_interface(window):
    """Quartic (linear-weight) interface value over the full window."""
    return np.asarray(window, dtype=float) @ BIG_EDGE


def gauss_split_weights(beta, scheme: WeightScheme):
    """Center-node weights sigma+ * w+ - sigma- * w- from the split sets.

    The combined weights sum to one but individual entries may be negative;
    this is the standard treatment of negative linear weights.
    """
    if scheme.family == "linear":
        beta = np.asarray(beta, dtype=float)
        d = _render((D_GAUSS_CENTER_EXACT,))[0]
        return np.broadcast_to(d, beta.shape).copy()
    w_plus = nonlinear_weights(beta, scheme, d=GAMMA_PLUS)
    w_minus = nonlinear_weights(beta, scheme, d=GAMMA_MINUS)
    return SIGMA_PLUS * w_plus - SIGMA_MINUS * w_minus


def reconstruct_gauss_point(window, scheme: WeightScheme, node):
    """Value at a Gauss node inside the center cell from one window.

    ``node`` is ``'minus'``, ``'center'`` or ``'plus'`` for
    ``x_i - xi*dx/2``, ``x_i``, ``x_i + xi*dx/2`` with ``xi = sqrt(3/5)``.
    """
    w = np.asarray(window, dtype=float)
    beta = smoothness_indicators(w)
    if node == "minus":
        cand = w @ CAND_GAUSS_MINUS.T
        omega = nonlinear_weights(beta, scheme, d=D_GAUSS_MINUS)
    elif node == "plus":
        cand = w @ CAND_GAUSS_PLUS.T
        omega = nonlinear_weights(beta, scheme, d=D_GAUSS_PLUS)
    elif node == "center":
        cand = w @ CAND_GAUSS_CENTER.T
        omega = gauss_split_weights(beta, scheme)
    else:
        raise ConfigurationError(f"unknown gauss node {node!r}")
    return (omega * cand).sum(axis=-1)


# ---------------------------------------------------------------------------
# Array kernels used by the semi-discrete operators.
# ---------------------------------------------------------------------------


def interface_states(upad, scheme: WeightScheme, record=False):
    """Left/right interface traces from a padded cell-average array.

    ``upad`` has shape (..., N); windows are formed along the last axis.
    Returns ``(u_minus, u_plus)`` of shape (..., N-5): the traces at the
    N-5 interfaces interior to the window range, i.e. between padded cells
    2..N-3.  With a ghost width of 3 these are exactly the n+1 interfaces
    of the n interior cells.

    With ``record=True`` also returns ``(omega_minus, omega_plus)``, the
    weight triples used for each returned trace.
    """
    u = np.asarray(upad, dtype=float)
    if u.shape[-1] < 6:
        raise ConfigurationError("padded array too short for a 5-cell stencil")
    W = _windows5(u)
    beta = _beta_windows(u)
    om_minus = nonlinear_weights(beta, scheme)
    om_plus = nonlinear_weights(beta[..., ::-1], scheme)
    v_minus = np.einsum("...kc,...kc->...k", om_minus, W @ CAND_EDGE.T)
    v_plus = np.einsum("...kc,...kc->...k", om_plus, W @ CAND_EDGE_REV.T)
    u_minus = v_minus[..., :-1]
    u_plus = v_plus[..., 1:]
    if record:
        return u_minus, u_plus, (om_minus[..., :-1, :], om_plus[..., 1:, :])
    return u_minus, u_plus


_GAUSS_CAND_STACK = np.vstack(
    [CAND_GAUSS_MINUS, CAND_GAUSS_CENTER, CAND_GAUSS_PLUS]
)


def gauss_point_values(ubar, scheme: WeightScheme):
    """Values at the three in-cell Gauss nodes from windowed cell averages.

    ``ubar`` has shape (..., N); returns shape (..., N-4, 3) with the last
    axis ordered (minus, center, plus).  The smoothness indicators are
    computed once and shared by the three node reconstructions.
    """
    u = np.asarray(ubar, dtype=float)
    W = _windows5(u)
    beta = _beta_windows(u)
    cand = W @ _GAUSS_CAND_STACK.T  # (..., K, 9)
    om_minus = nonlinear_weights(beta, scheme, d=D_GAUSS_MINUS)
    om_plus = nonlinear_weights(beta, scheme, d=D_GAUSS_PLUS)
    om_center = gauss_split_weights(beta, scheme)
    vals = np.empty(cand.shape[:-1] + (3,))
    vals[..., 0] = np.einsum("...kc,...kc->...k", om_minus, cand[..., 0:3])
    vals[..., 1] = np.einsum("...kc,...kc->...k", om_center, cand[..., 3:6])
    vals[..., 2] = np.einsum("...kc,...kc->...k", om_plus, cand[..., 6:9])
    return vals
