"""Conservative semi-discrete operators: 1D scalar/Euler and 2D scalar.

The 1D operator reconstructs left/right interface traces componentwise and
applies a global Lax-Friedrichs flux.  The 2D operator uses two sweeps per
direction: interface WENO along the normal direction produces line averages
of the trace on each face, then Gauss-point WENO in the transverse
direction converts those to point values at the three-node quadrature, so a
face flux is the quadrature average of pointwise Lax-Friedrichs fluxes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .mesh import CellField, Grid1D, Grid2D, fill_ghosts
from .physics import EulerModel, FluxPair2D, ScalarFluxModel, lf_flux, max_wave_speed
from .weno import GAUSS_WEIGHTS, WeightScheme, gauss_point_values, interface_states


@dataclass
class InterfaceRecord:
    """Per-interface diagnostics of one tendency evaluation (1D)."""

    positions: np.ndarray       # (n+1,) interface coordinates
    omega_minus: np.ndarray     # (m, n+1, 3) weights of the left-biased trace
    omega_plus: np.ndarray      # (m, n+1, 3) weights of the right-biased trace
    flux: np.ndarray            # (m, n+1) numerical fluxes
    alpha: float


def _require_ghost(grid, need=3):
    if grid.ghost < need:
        raise ConfigurationError(
            f"fifth-order stencils need a ghost width of {need}, grid has {grid.ghost}"
        )


@dataclass
class SemiDiscreteOp1D:
    """d(ubar)/dt = -(fhat_{i+1/2} - fhat_{i-1/2}) / dx on a 1D grid."""

    model: ScalarFluxModel | EulerModel
    scheme: WeightScheme
    bc: object

    def __call__(self, field: CellField) -> CellField:
        return self._tendency(field, False)[0]

    def tendency_recorded(self, field: CellField):
        return self._tendency(field, True)

    def _tendency(self, field: CellField, record):
        grid = field.grid
        if not isinstance(grid, Grid1D):
            raise ConfigurationError("SemiDiscreteOp1D requires a 1D field")
        _require_ghost(grid)
        filled = fill_ghosts(field, self.bc)
        alpha = max_wave_speed(filled, self.model)
        if record:
            u_minus, u_plus, (om_minus, om_plus) = interface_states(
                filled.data, self.scheme, record=True
            )
        else:
            u_minus, u_plus = interface_states(filled.data, self.scheme)
        h = lf_flux(u_minus, u_plus, self.model.flux, alpha)
        out = CellField.zeros(grid, ncomp=field.ncomp)
        out.interior[...] = -(h[..., 1:] - h[..., :-1]) / grid.dx
        rec = None
        if record:
            rec = InterfaceRecord(grid.interfaces(), om_minus, om_plus, h, alpha)
        return out, rec


@dataclass
class SemiDiscreteOp2D:
    """2D scalar tendency with 3-point Gauss quadrature of the face fluxes."""

    model: FluxPair2D
    scheme: WeightScheme
    bc: object

    def __call__(self, field: CellField) -> CellField:
        grid = field.grid
        if not isinstance(grid, Grid2D):
            raise ConfigurationError("SemiDiscreteOp2D requires a 2D field")
        _require_ghost(grid)
        if field.ncomp != 1:
            raise ConfigurationError("2D solver is scalar only")
        filled = fill_ghosts(field, self.bc)
        alpha_x, alpha_y = max_wave_speed(filled, self.model)
        d = filled.data[0]
        g = grid.ghost
        fx = self._face_flux(d, self.model.fx, alpha_x, grid.nx, grid.ny, g)
        fy = self._face_flux(d.T, self.model.fy, alpha_y, grid.ny, grid.nx, g).T
        out = CellField.zeros(grid, ncomp=1)
        out.interior[0] = (
            -(fx[1:, :] - fx[:-1, :]) / grid.dx - (fy[:, 1:] - fy[:, :-1]) / grid.dy
        )
        return out

    def _face_flux(self, d, model, alpha, n_normal, n_trans, g):
        """Face fluxes across the first axis of ``d``: shape (n_normal+1, n_trans)."""
        # Sweep 1: interface WENO along the normal axis, every transverse row.
        u_minus, u_plus = interface_states(d.T, self.scheme)  # (n_trans_tot, n+1)
        # Sweep 2: transverse Gauss-point reconstruction of the line averages.
        pts_minus = gauss_point_values(u_minus.T, self.scheme)  # (n+1, K, 3)
        pts_plus = gauss_point_values(u_plus.T, self.scheme)
        h = lf_flux(pts_minus, pts_plus, model.flux, alpha)
        face = 0.5 * (h @ GAUSS_WEIGHTS)
        # Transverse window k covers padded rows k..k+4 and is centered at
        # row k+2; keep the interior rows g..g+n_trans-1.
        return face[:, g - 2 : g - 2 + n_trans]
