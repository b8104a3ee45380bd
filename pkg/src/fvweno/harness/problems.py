"""Benchmark problem registry: grids, initial data, exact/reference hooks.

Each entry describes one of the desk-scale experiments: the four 1D scalar
model fluxes, the Euler shock tubes, and the 2D scalar cases.  Initial data
are produced as cell averages (5-point Gauss for smooth data, exact
volume-fraction averages for steps and the 2D square).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import ConfigurationError
from ..integrate import TimeControl
from ..mesh import (
    OUTFLOW,
    PERIODIC,
    REFLECTIVE,
    CellField,
    Grid1D,
    Grid2D,
    cell_average_of,
    inflow,
    polygon_indicator_average,
    step_function_average,
)
from ..physics import (
    ADVECTION,
    BUCKLEY_LEVERETT,
    BURGERS,
    EULER,
    QUARTIC_NONCONVEX,
    FluxPair2D,
    exact_riemann,
)

GAMMA = EULER.gamma


def solve_characteristics(u0, du0, x, t, lo, hi, tol=1e-14, max_iter=100):
    """Solve u = u0(x - u*t) pointwise by Newton, bisection as fallback.

    Valid before characteristics cross (monotone residual); ``lo``/``hi``
    bracket the data range.
    """
    x = np.asarray(x, dtype=float)
    if t == 0.0:
        return u0(x)
    u = np.clip(u0(x), lo, hi)
    converged = np.zeros(u.shape, dtype=bool)
    for _ in range(max_iter):
        xi = x - u * t
        f = u - u0(xi)
        df = 1.0 + t * du0(xi)
        ok = np.abs(df) > 1e-14
        new_u = np.where(ok, u - f / np.where(ok, df, 1.0), u)
        new_u = np.clip(new_u, lo, hi)
        converged = np.abs(new_u - u) <= tol * np.maximum(1.0, np.abs(new_u))
        u = new_u
        if converged.all():
            break
    if not converged.all():
        # bisection on the stalled entries; the residual is nondecreasing in u
        mask = ~converged
        a = np.full(u[mask].shape, lo)
        b = np.full(u[mask].shape, hi)
        xm = x[mask]
        for _ in range(200):
            mid = 0.5 * (a + b)
            fm = mid - u0(xm - mid * t)
            a = np.where(fm < 0.0, mid, a)
            b = np.where(fm < 0.0, b, mid)
        u[mask] = 0.5 * (a + b)
    return u


@dataclass(frozen=True)
class Problem:
    pid: str
    kind: str                      # scalar1d | euler1d | scalar2d
    model: object
    bc: object                     # tuple of BoundaryCondition
    default_n: object
    tfinal: float
    time: TimeControl
    make_grid: Callable            # n -> grid
    initial: Callable              # grid -> CellField
    exact: Callable | None = None  # (grid, t) -> CellField
    reference: str | None = None   # 'characteristics' | 'fine_grid'
    reference_cells: int = 2001
    expensive_reference: bool = False
    notes: str = ""


REGISTRY: dict = {}


def register(problem: Problem):
    REGISTRY[problem.pid] = problem
    return problem


def get_problem(pid) -> Problem:
    try:
        return REGISTRY[pid]
    except KeyError:
        raise ConfigurationError(
            f"unknown problem {pid!r}; known: {', '.join(sorted(REGISTRY))}"
        ) from None


def _grid1d(a, b):
    return lambda n: Grid1D(a, b, int(n))


def _grid2d(ax, bx, ay, by):
    def make(n):
        if np.isscalar(n):
            nx = ny = int(n)
        else:
            nx, ny = (int(v) for v in n)
        return Grid2D(ax, bx, ay, by, nx, ny)

    return make


# --- 1D scalar -------------------------------------------------------------

def _sin_ic(grid):
    return cell_average_of(lambda x: np.sin(np.pi * x), grid)


def _sin_exact(grid, t):
    return cell_average_of(lambda x: np.sin(np.pi * (x - t)), grid)


register(Problem(
    pid="advection1d-accuracy",
    kind="scalar1d",
    model=ADVECTION,
    bc=(PERIODIC, PERIODIC),
    default_n=80,
    tfinal=8.0,
    time=TimeControl("dt_scale", 0.1),
    make_grid=_grid1d(-1.0, 1.0),
    initial=_sin_ic,
    exact=_sin_exact,
    notes="smooth advection used for the accuracy tables",
))


def _burgers_ic(grid):
    return cell_average_of(lambda x: -np.sin(np.pi * x), grid)


def _burgers_exact(grid, t):
    u0 = lambda x: -np.sin(np.pi * x)
    du0 = lambda x: -np.pi * np.cos(np.pi * x)
    return cell_average_of(
        lambda x: solve_characteristics(u0, du0, x, t, -1.0, 1.0), grid
    )


register(Problem(
    pid="burgers1d",
    kind="scalar1d",
    model=BURGERS,
    bc=(PERIODIC, PERIODIC),
    default_n=40,
    tfinal=1.0 / math.pi,
    time=TimeControl("cfl", 0.4),
    make_grid=_grid1d(-1.0, 1.0),
    initial=_burgers_ic,
    exact=_burgers_exact,
    notes="smooth up to the final time; exact solution by characteristics",
))

register(Problem(
    pid="nonconvex-riemann",
    kind="scalar1d",
    model=QUARTIC_NONCONVEX,
    bc=(OUTFLOW, OUTFLOW),
    default_n=40,
    tfinal=1.0,
    time=TimeControl("cfl", 0.4),
    make_grid=_grid1d(-1.0, 1.0),
    initial=lambda grid: step_function_average(grid, 0.0, 2.0, -2.0),
    reference="fine_grid",
    notes="two shocks with a rarefaction in between",
))

register(Problem(
    pid="nonconvex-stationary",
    kind="scalar1d",
    model=QUARTIC_NONCONVEX,
    bc=(OUTFLOW, OUTFLOW),
    default_n=40,
    tfinal=0.05,
    time=TimeControl("cfl", 0.4),
    make_grid=_grid1d(-1.0, 1.0),
    initial=lambda grid: step_function_average(grid, 0.0, -3.0, 3.0),
    exact=lambda grid, t: step_function_average(grid, 0.0, -3.0, 3.0),
    notes="stationary shock of the even nonconvex flux",
))

register(Problem(
    pid="buckley-leverett",
    kind="scalar1d",
    model=BUCKLEY_LEVERETT,
    bc=(OUTFLOW, OUTFLOW),
    default_n=80,
    tfinal=0.3,
    time=TimeControl("cfl", 0.4),
    make_grid=_grid1d(-1.0, 1.0),
    initial=lambda grid: CellField.from_interior(
        grid,
        step_function_average(grid, 0.0, 1.0, 0.0).interior[0]
        - step_function_average(grid, -0.5, 1.0, 0.0).interior[0],
    ),
    reference="fine_grid",
    notes="two-phase flow flux; square pulse on [-1/2, 0]",
))


# --- 1D Euler --------------------------------------------------------------

def _euler_shock_tube_ic(left, right, x0=0.0):
    left_cons = EULER.conserved(*left)
    right_cons = EULER.conserved(*right)

    def build(grid):
        return step_function_average(grid, x0, left_cons, right_cons)

    return build


def _euler_riemann_exact(left, right, x0=0.0):
    fan = exact_riemann(left, right)

    def build(grid, t):
        if t <= 0.0:
            return _euler_shock_tube_ic(left, right, x0)(grid)

        def pointwise(x):
            rho, u, P = fan.sample((x - x0) / t)
            return rho, u, P

        nodes, wts = np.polynomial.legendre.leggauss(5)
        xq = grid.centers()[:, None] + 0.5 * grid.dx * nodes[None, :]
        rho, u, P = pointwise(xq.ravel())
        cons = EULER.conserved(rho, u, P).reshape(3, *xq.shape)
        values = (cons @ wts) / 2.0
        return CellField.from_interior(grid, values)

    return build


SOD_LEFT, SOD_RIGHT = (1.0, 0.0, 1.0), (0.125, 0.0, 0.1)
LAX_LEFT, LAX_RIGHT = (0.445, 0.698, 3.528), (0.5, 0.0, 0.571)

register(Problem(
    pid="sod",
    kind="euler1d",
    model=EULER,
    bc=(OUTFLOW, OUTFLOW),
    default_n=200,
    tfinal=2.0,
    time=TimeControl("cfl", 0.4),
    make_grid=_grid1d(-5.0, 5.0),
    initial=_euler_shock_tube_ic(SOD_LEFT, SOD_RIGHT),
    exact=_euler_riemann_exact(SOD_LEFT, SOD_RIGHT),
))

register(Problem(
    pid="lax",
    kind="euler1d",
    model=EULER,
    bc=(OUTFLOW, OUTFLOW),
    default_n=200,
    tfinal=1.3,
    time=TimeControl("cfl", 0.4),
    make_grid=_grid1d(-5.0, 5.0),
    initial=_euler_shock_tube_ic(LAX_LEFT, LAX_RIGHT),
    exact=_euler_riemann_exact(LAX_LEFT, LAX_RIGHT),
))


def _shock_entropy_ic(k):
    left = EULER.conserved(3.857143, 2.629369, 10.333333)

    def build(grid):
        centers = grid.centers()
        nodes, wts = np.polynomial.legendre.leggauss(5)
        xq = centers[:, None] + 0.5 * grid.dx * nodes[None, :]
        rho = ((1.0 + 0.2 * np.sin(k * xq)) @ wts) / 2.0
        values = np.zeros((3, grid.n))
        values[0] = rho
        values[2] = 1.0 / (GAMMA - 1.0)
        mask = centers < -4.0
        values[:, mask] = left[:, None]
        return CellField.from_interior(grid, values)

    return build


register(Problem(
    pid="shock-entropy-k5",
    kind="euler1d",
    model=EULER,
    bc=(OUTFLOW, OUTFLOW),
    default_n=200,
    tfinal=2.0,
    time=TimeControl("cfl", 0.4),
    make_grid=_grid1d(-5.0, 5.0),
    initial=_shock_entropy_ic(5.0),
    reference="fine_grid",
    reference_cells=2001,
    notes="Mach-3 shock running into an entropy wave, wavenumber 5",
))

register(Problem(
    pid="shock-entropy-k10",
    kind="euler1d",
    model=EULER,
    bc=(OUTFLOW, OUTFLOW),
    default_n=400,
    tfinal=2.0,
    time=TimeControl("cfl", 0.4),
    make_grid=_grid1d(-5.0, 5.0),
    initial=_shock_entropy_ic(10.0),
    reference="fine_grid",
    reference_cells=2001,
    expensive_reference=True,
))


def _blastwave_ic(grid):
    centers = grid.centers()
    rho = np.ones(grid.n)
    P = np.where(centers < 0.1, 1000.0, np.where(centers < 0.9, 0.01, 100.0))
    return CellField.from_interior(grid, EULER.conserved(rho, np.zeros(grid.n), P))


register(Problem(
    pid="blastwave",
    kind="euler1d",
    model=EULER,
    bc=(REFLECTIVE, REFLECTIVE),
    default_n=400,
    tfinal=0.038,
    time=TimeControl("cfl", 0.4),
    make_grid=_grid1d(0.0, 1.0),
    initial=_blastwave_ic,
    reference="fine_grid",
    reference_cells=4001,
    expensive_reference=True,
    notes="interacting blast waves between reflective walls",
))


# --- 2D scalar -------------------------------------------------------------

def _burgers2d_exact(grid, t):
    U0 = lambda s: 0.25 + 0.5 * np.sin(np.pi * s)
    dU0 = lambda s: 0.5 * np.pi * np.cos(np.pi * s)

    def pointwise(x, y):
        s = 0.5 * (x + y)
        return solve_characteristics(U0, dU0, s, t, -0.25, 0.75)

    return cell_average_of(pointwise, grid)


register(Problem(
    pid="burgers2d",
    kind="scalar2d",
    model=FluxPair2D(BURGERS, BURGERS),
    bc=(PERIODIC, PERIODIC, PERIODIC, PERIODIC),
    default_n=(40, 40),
    tfinal=2.0 / math.pi,
    time=TimeControl("cfl", 0.4),
    make_grid=_grid2d(-2.0, 2.0, -2.0, 2.0),
    initial=lambda grid: _burgers2d_exact(grid, 0.0),
    exact=_burgers2d_exact,
    notes="smooth up to the final time; reduces to 1D along x+y",
))

_DIAMOND = [
    (1.0 / math.sqrt(2.0), 0.0),
    (0.0, 1.0 / math.sqrt(2.0)),
    (-1.0 / math.sqrt(2.0), 0.0),
    (0.0, -1.0 / math.sqrt(2.0)),
]


def _diamond_exact(grid, t):
    # shift by t in both directions with periodic wrap (period 2); sum the
    # exact overlap fractions of the periodic images
    s = t % 2.0
    total = None
    for ox in (0.0, -2.0):
        for oy in (0.0, -2.0):
            verts = [(vx + s + ox, vy + s + oy) for vx, vy in _DIAMOND]
            f = polygon_indicator_average(grid, verts)
            total = f.interior[0] if total is None else total + f.interior[0]
    return CellField.from_interior(grid, total)


register(Problem(
    pid="advection2d-accuracy",
    kind="scalar2d",
    model=FluxPair2D(ADVECTION, ADVECTION),
    bc=(PERIODIC, PERIODIC, PERIODIC, PERIODIC),
    default_n=(40, 40),
    tfinal=4.0,
    time=TimeControl("dt_scale", 0.4),
    make_grid=_grid2d(-1.0, 1.0, -1.0, 1.0),
    initial=lambda grid: _diamond_exact(grid, 0.0),
    exact=_diamond_exact,
    notes="rotated unit square advected diagonally; discontinuous data",
))


def _boundary_layer(pid, alpha, beta):
    profile = lambda x: alpha + beta * np.sin(x)
    register(Problem(
        pid=pid,
        kind="scalar2d",
        model=FluxPair2D(BURGERS, ADVECTION),
        bc=(PERIODIC, PERIODIC, inflow(profile), OUTFLOW),
        default_n=(30, 30),
        tfinal=1.0,
        time=TimeControl("cfl", 0.4),
        make_grid=_grid2d(0.0, 2.0 * math.pi, 0.0, 1.0),
        initial=lambda grid: cell_average_of(lambda x, y: profile(x) + 0.0 * y, grid),
        notes=f"boundary layer flow to steady state, inflow {alpha} + {beta} sin x",
    ))


_boundary_layer("boundary-layer", 0.0, 5.0)
_boundary_layer("boundary-layer-a2", 2.0, 5.0)
