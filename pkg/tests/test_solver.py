"""Semi-discrete operators: 1D scalar/Euler and the 2D two-sweep scheme."""

import numpy as np
import pytest

from fvweno.errors import ConfigurationError
from fvweno.integrate import TimeControl, integrate_to
from fvweno.mesh import (
    OUTFLOW,
    PERIODIC,
    CellField,
    Grid1D,
    Grid2D,
    cell_average_of,
    fill_ghosts,
    step_function_average,
)
from fvweno.physics import ADVECTION, BURGERS, EULER, FluxPair2D
from fvweno.solver import SemiDiscreteOp1D, SemiDiscreteOp2D
from fvweno.weno import WeightScheme

ALL_SCHEMES = [
    WeightScheme.js(),
    WeightScheme.m(),
    WeightScheme.z(),
    WeightScheme.zr(p=2),
    WeightScheme.zl(p=2, q=2),
]


def test_constant_field_zero_tendency():
    grid = Grid1D(0.0, 1.0, 16)
    u = CellField.from_interior(grid, np.full(16, 2.2))
    op = SemiDiscreteOp1D(BURGERS, WeightScheme.js(), (PERIODIC, PERIODIC))
    np.testing.assert_array_equal(op(u).interior, 0.0)


def test_ghost_width_is_enforced():
    grid = Grid1D(0.0, 1.0, 16, ghost=2)
    u = CellField.from_interior(grid, np.zeros(16))
    op = SemiDiscreteOp1D(ADVECTION, WeightScheme.js(), (PERIODIC, PERIODIC))
    with pytest.raises(ConfigurationError):
        op(u)


def test_riemann_first_stage_fluxes_match_published_cells():
    # jump 1 -> 0 at x=0, dx=0.01; the interface fluxes at x=0 and x=0.01
    grid = Grid1D(-0.15, 0.22, 37)
    # exact unit step by index so the constant states carry no rounding
    u = CellField.from_interior(grid, np.where(np.arange(37) < 15, 1.0, 0.0))
    op = SemiDiscreteOp1D(ADVECTION, WeightScheme.js(eps=1e-12), (OUTFLOW, OUTFLOW))
    _, rec = op.tendency_recorded(u)
    k0 = int(round(-grid.a / grid.dx))  # interface at x = 0
    assert abs(rec.flux[0][k0] - 1.0) <= 1e-15
    np.testing.assert_allclose(rec.flux[0][k0 + 1], -2.125e-25, rtol=1e-3)


def test_advection_tendency_matches_analytic_derivative():
    # d/dt ubar_i = -pi * cell average of cos(pi x); fifth-order accurate
    errs = []
    for n in (40, 80):
        grid = Grid1D(-1.0, 1.0, n)
        u = cell_average_of(lambda x: np.sin(np.pi * x), grid)
        op = SemiDiscreteOp1D(ADVECTION, WeightScheme.m(), (PERIODIC, PERIODIC))
        tend = op(u).interior[0]
        exact = -np.pi * cell_average_of(lambda x: np.cos(np.pi * x), grid).interior[0]
        errs.append(np.abs(tend - exact).max())
    assert np.log2(errs[0] / errs[1]) >= 4.5, errs


@pytest.mark.parametrize("scheme", ALL_SCHEMES, ids=lambda s: s.label)
def test_tendency_conserves_discrete_mass(scheme):
    rng = np.random.default_rng(1)
    grid = Grid1D(-1.0, 1.0, 32)
    u = CellField.from_interior(grid, rng.uniform(0.2, 1.0, 32))
    op = SemiDiscreteOp1D(BURGERS, scheme, (PERIODIC, PERIODIC))
    out, rec = op.tendency_recorded(u)
    scale = np.abs(rec.flux).sum()
    assert abs(out.interior[0].sum() * grid.dx) <= 10 * np.finfo(float).eps * scale


@pytest.mark.parametrize("scheme", ALL_SCHEMES, ids=lambda s: s.label)
def test_eno_property_single_jump_advection(scheme):
    # advect a single jump to T=1: no new extremum beyond the data range by
    # more than 1e-2
    grid = Grid1D(-0.35, 1.35, 170)
    u = step_function_average(grid, 0.0, 1.0, 0.0)
    op = SemiDiscreteOp1D(ADVECTION, scheme, (OUTFLOW, OUTFLOW))
    out = integrate_to(u, op, 1.0, TimeControl("dt_scale", 0.5))
    vals = out.interior[0]
    assert vals.max() <= 1.0 + 1e-2
    assert vals.min() >= -1e-2


def test_euler_componentwise_tendency_constant_state():
    grid = Grid1D(0.0, 1.0, 12)
    u = CellField.from_interior(grid, np.tile(EULER.conserved(1.0, 0.3, 2.0)[:, None], 12))
    op = SemiDiscreteOp1D(EULER, WeightScheme.z(), (OUTFLOW, OUTFLOW))
    np.testing.assert_allclose(op(u).interior, 0.0, atol=1e-13)


def test_record_shapes():
    grid = Grid1D(0.0, 1.0, 10)
    u = CellField.from_interior(grid, np.linspace(0.1, 1.0, 10))
    op = SemiDiscreteOp1D(ADVECTION, WeightScheme.js(), (PERIODIC, PERIODIC))
    _, rec = op.tendency_recorded(u)
    assert rec.positions.shape == (11,)
    assert rec.omega_minus.shape == (1, 11, 3)
    assert rec.omega_plus.shape == (1, 11, 3)
    assert rec.flux.shape == (1, 11)


# --- 2D ---------------------------------------------------------------------

def _op2d(scheme, model=None, bc=(PERIODIC,) * 4):
    return SemiDiscreteOp2D(model or FluxPair2D(BURGERS, BURGERS), scheme, bc)


def test_2d_constant_field_zero_tendency():
    grid = Grid2D(0.0, 1.0, 0.0, 1.0, 10, 12)
    u = CellField.from_interior(grid, np.full((10, 12), 0.7))
    np.testing.assert_array_equal(_op2d(WeightScheme.z())(u).interior, 0.0)


@pytest.mark.parametrize("scheme", ALL_SCHEMES, ids=lambda s: s.label)
def test_2d_reduces_to_1d_for_separable_data(scheme):
    g1 = Grid1D(-1.0, 1.0, 24)
    g2 = Grid2D(-1.0, 1.0, -1.0, 1.0, 24, 18)
    X = lambda x: np.sin(np.pi * x) + 0.3 * np.cos(2 * np.pi * x)
    u1 = cell_average_of(X, g1)
    u2 = cell_average_of(lambda x, y: X(x) + 0.0 * y, g2)
    t1 = SemiDiscreteOp1D(BURGERS, scheme, (PERIODIC, PERIODIC))(u1).interior[0]
    t2 = _op2d(scheme)(u2).interior[0]
    assert np.abs(t2 - t1[:, None]).max() < 1e-12


def test_2d_smooth_tendency_order():
    errs = []
    for n in (20, 40):
        grid = Grid2D(-2.0, 2.0, -2.0, 2.0, n, n)
        u = cell_average_of(lambda x, y: 0.25 + 0.5 * np.sin(np.pi * (x + y) / 2), grid)
        tend = _op2d(WeightScheme.m())(u).interior[0]

        def exact_tendency(x, y):
            uu = 0.25 + 0.5 * np.sin(np.pi * (x + y) / 2)
            ux = 0.25 * np.pi * np.cos(np.pi * (x + y) / 2)
            return -2.0 * uu * ux

        exact = cell_average_of(exact_tendency, grid).interior[0]
        errs.append(np.abs(tend - exact).max())
    assert np.log2(errs[0] / errs[1]) >= 4.0, errs


def test_2d_periodic_conservation_per_step():
    from fvweno.integrate import rk3_step

    rng = np.random.default_rng(4)
    grid = Grid2D(0.0, 1.0, 0.0, 1.0, 16, 16)
    u = CellField.from_interior(grid, 0.5 + 0.1 * rng.normal(size=(16, 16)))
    op = _op2d(WeightScheme.zl(p=1, q=1))
    mass = u.interior[0].sum() * grid.dx * grid.dy
    for _ in range(5):
        u = rk3_step(u, op, 0.01)
        new_mass = u.interior[0].sum() * grid.dx * grid.dy
        assert abs(new_mass - mass) < 1e-10
        mass = new_mass


def test_2d_rejects_vector_fields():
    grid = Grid2D(0.0, 1.0, 0.0, 1.0, 8, 8)
    u = CellField.zeros(grid, ncomp=3)
    with pytest.raises(ConfigurationError):
        _op2d(WeightScheme.z())(u)


def test_euler_mass_changes_only_through_boundary_fluxes():
    # interior mass tendency telescopes to the boundary fluxes
    from fvweno.harness.problems import get_problem

    prob = get_problem("sod")
    grid = prob.make_grid(200)
    u = prob.initial(grid)
    op = SemiDiscreteOp1D(EULER, WeightScheme.zl(p=5, q=1), prob.bc)
    tend, rec = op.tendency_recorded(u)
    total = tend.interior.sum(axis=1) * grid.dx
    boundary = -(rec.flux[:, -1] - rec.flux[:, 0])
    np.testing.assert_allclose(total, boundary, atol=1e-12 * np.abs(rec.flux).max())
