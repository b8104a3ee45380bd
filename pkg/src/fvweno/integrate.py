"""Optimal third-order TVD Runge-Kutta stepping and time-step control."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DivergenceError, StateError
from .mesh import CellField, Grid1D
from .physics import max_wave_speed


@dataclass(frozen=True)
class TimeControl:
    """Time-step policy: ``cfl`` mode picks dt from the current wave speed,
    ``dt_scale`` fixes dt = value * dx (the accuracy-table convention)."""

    mode: str
    value: float

    def __post_init__(self):
        if self.mode not in ("cfl", "dt_scale"):
            raise ConfigurationError(f"unknown time-step mode {self.mode!r}")
        if not self.value > 0.0:
            raise ConfigurationError("time-step parameter must be positive")


def _stage(L, field, want_record):
    if want_record and hasattr(L, "tendency_recorded"):
        return L.tendency_recorded(field)
    return L(field), None


def rk3_step(u: CellField, L, dt, observer=None) -> CellField:
    """One step of the optimal third-order TVD Runge-Kutta method.

    ``L`` maps a field to its conservative tendency (ghosts are refilled by
    the operator on every evaluation).  ``observer``, if given, is called
    after each stage as ``observer(stage, stage_field, record)`` where
    ``record`` carries the interface weights and fluxes used by that stage
    when ``L`` supports recording.  Observation must not mutate the field.

    Non-finite values (or an inadmissible state met while evaluating ``L``)
    raise :class:`DivergenceError` naming the stage.
    """
    if not dt > 0.0:
        raise ConfigurationError("dt must be positive")
    want = observer is not None

    def tend(field, stage):
        try:
            return _stage(L, field, want)
        except StateError as exc:
            raise DivergenceError(str(exc), stage=stage) from exc

    def check(field, stage):
        if not np.all(np.isfinite(field.data)):
            raise DivergenceError("non-finite values", stage=stage)

    Lu, rec = tend(u, 1)
    u1 = u.with_data(u.data + dt * Lu.data)
    check(u1, 1)
    if observer is not None:
        observer(1, u1, rec)

    Lu1, rec = tend(u1, 2)
    u2 = u.with_data(0.75 * u.data + 0.25 * u1.data + 0.25 * dt * Lu1.data)
    check(u2, 2)
    if observer is not None:
        observer(2, u2, rec)

    Lu2, rec = tend(u2, 3)
    unew = u.with_data(
        u.data / 3.0 + (2.0 / 3.0) * u2.data + (2.0 / 3.0) * dt * Lu2.data
    )
    check(unew, 3)
    if observer is not None:
        observer(3, unew, rec)
    return unew


def cfl_dt(field: CellField, model, cfl, dx, dy=None, remaining=None):
    """CFL time step: ``cfl * dx / alpha`` in 1D and
    ``cfl / (alpha_x/dx + alpha_y/dy)`` in 2D.

    Clamped to ``remaining`` so the final step lands exactly on the target
    time; a zero wave speed (steady data) returns the remaining time.
    """
    if not cfl > 0.0:
        raise ConfigurationError("cfl must be positive")
    alpha = max_wave_speed(field, model)
    if dy is None:
        dt = cfl * dx / alpha if alpha > 0.0 else np.inf
    else:
        ax, ay = alpha
        denom = ax / dx + ay / dy
        dt = cfl / denom if denom > 0.0 else np.inf
    if remaining is not None:
        dt = min(dt, remaining)
    if not np.isfinite(dt):
        raise ConfigurationError("unbounded time step: zero wave speed and no remaining time")
    return dt


def integrate_to(u: CellField, op, t_final, time: TimeControl, observer=None,
                 step_callback=None) -> CellField:
    """Advance ``u`` to ``t_final`` with RK3 steps under the given policy.

    ``op`` is a semi-discrete operator exposing ``model`` and grid metadata
    (a :class:`~fvweno.solver.SemiDiscreteOp1D` or 2D).  A divergence is
    re-raised with the failing step number attached.
    """
    grid = u.grid
    if isinstance(grid, Grid1D):
        dx, dy = grid.dx, None
    else:
        dx, dy = grid.dx, grid.dy
    t = 0.0
    step = 0
    eps = 1e-12 * max(t_final, 1.0)
    while t < t_final - eps:
        remaining = t_final - t
        if time.mode == "dt_scale":
            dt = min(time.value * dx, remaining)
        else:
            try:
                dt = cfl_dt(u, op.model, time.value, dx, dy, remaining=remaining)
            except StateError as exc:
                # the state turned inadmissible in the last stage of the
                # completed step; report it against that stage
                raise DivergenceError(str(exc), stage=3, step=step) from exc
        step += 1
        try:
            u = rk3_step(u, op, dt, observer=observer)
        except DivergenceError as exc:
            exc.step = step
            raise
        t += dt
        if step_callback is not None:
            step_callback(step, t, u)
    return u
