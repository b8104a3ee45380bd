"""Flux catalog: scalar model problems, the 1D Euler system, and the
Lax-Friedrichs numerical flux with a global wave-speed bound."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import StateError
from .mesh import CellField

GAMMA = 1.4


@dataclass(frozen=True)
class ScalarFluxModel:
    """A scalar conservation-law flux f(u) with a wave-speed bound.

    ``speed_bound(lo, hi)`` returns max |f'(u)| over u in [lo, hi]; the
    Lax-Friedrichs dissipation coefficient is taken as this bound over the
    range of the current data.
    """

    name: str
    flux: Callable
    dflux: Callable
    speed_bound: Callable


def _advection_speed(lo, hi):
    return 1.0


def _burgers_speed(lo, hi):
    return max(abs(lo), abs(hi))


def _quartic_flux(u):
    u = np.asarray(u, dtype=float)
    return 0.25 * (u * u - 1.0) * (u * u - 4.0)


def _quartic_dflux(u):
    u = np.asarray(u, dtype=float)
    return u * (u * u - 2.5)


def _quartic_speed(lo, hi):
    # |f'| is maximized at an endpoint or an interior critical point of f',
    # i.e. where f'' = 3u^2 - 5/2 = 0.
    cands = [lo, hi]
    for c in (-np.sqrt(5.0 / 6.0), np.sqrt(5.0 / 6.0)):
        if lo < c < hi:
            cands.append(c)
    return float(max(abs(_quartic_dflux(c)) for c in cands))


def _buckley_flux(u):
    u = np.asarray(u, dtype=float)
    return 4.0 * u * u / (4.0 * u * u + (1.0 - u) ** 2)


def _buckley_dflux(u):
    u = np.asarray(u, dtype=float)
    return 8.0 * u * (1.0 - u) / (4.0 * u * u + (1.0 - u) ** 2) ** 2


def _buckley_speed(lo, hi):
    u = np.linspace(lo, hi, 4097)
    return float(np.max(np.abs(_buckley_dflux(u))))


ADVECTION = ScalarFluxModel("advection", lambda u: np.asarray(u, dtype=float),
                            lambda u: np.ones_like(np.asarray(u, dtype=float)),
                            _advection_speed)
BURGERS = ScalarFluxModel("burgers", lambda u: 0.5 * np.square(u),
                          lambda u: np.asarray(u, dtype=float), _burgers_speed)
QUARTIC_NONCONVEX = ScalarFluxModel("quartic", _quartic_flux, _quartic_dflux,
                                    _quartic_speed)
BUCKLEY_LEVERETT = ScalarFluxModel("buckley-leverett", _buckley_flux,
                                   _buckley_dflux, _buckley_speed)

SCALAR_MODELS = {
    m.name: m for m in (ADVECTION, BURGERS, QUARTIC_NONCONVEX, BUCKLEY_LEVERETT)
}


@dataclass(frozen=True)
class FluxPair2D:
    """Directional fluxes (f, g) of a 2D scalar conservation law."""

    fx: ScalarFluxModel
    fy: ScalarFluxModel


@dataclass(frozen=True)
class EulerModel:
    """1D Euler equations of an ideal gas in conserved variables
    (rho, rho*u, E) with E = P/(gamma-1) + rho*u^2/2."""

    gamma: float = GAMMA

    def conserved(self, rho, u, P):
        rho = np.asarray(rho, dtype=float)
        u = np.asarray(u, dtype=float)
        P = np.asarray(P, dtype=float)
        E = P / (self.gamma - 1.0) + 0.5 * rho * u * u
        return np.stack([rho, rho * u, E])

    def primitive(self, U):
        rho = U[0]
        u = U[1] / rho
        P = (self.gamma - 1.0) * (U[2] - 0.5 * U[1] * u)
        return rho, u, P

    def flux(self, U):
        rho, u, P = self.primitive(U)
        return np.stack([U[1], U[1] * u + P, u * (U[2] + P)])

    def sound_speed(self, U):
        rho, _, P = self.primitive(U)
        return np.sqrt(self.gamma * P / rho)

    def validate(self, U):
        rho, _, P = self.primitive(U)
        if not np.all(rho > 0.0):
            raise StateError(f"nonpositive density (min {np.min(rho):.3e})")
        if not np.all(P > 0.0):
            raise StateError(f"nonpositive pressure (min {np.min(P):.3e})")


EULER = EulerModel()


def euler_flux(U, gamma=GAMMA):
    """Flux vector (rho*u, rho*u^2 + P, u*(E + P)) of a conserved state."""
    U = np.asarray(U, dtype=float)
    if not np.all(U[0] > 0.0):
        raise StateError(f"nonpositive density (min {np.min(U[0]):.3e})")
    return EulerModel(gamma).flux(U)


def lf_flux(a, b, flux, alpha):
    """Lax-Friedrichs flux h(a, b) = (f(a) + f(b) - alpha*(b - a)) / 2.

    ``alpha`` must bound the wave speed over the relevant range; the flux is
    then monotone (nondecreasing in a, nonincreasing in b).  Componentwise
    for systems.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return 0.5 * (flux(a) + flux(b) - alpha * (b - a))


def max_wave_speed(field: CellField, model):
    """Global wave-speed bound of the interior data.

    Scalar models: max |f'| over the data range.  Euler: max(|u| + c); a
    nonpositive density or pressure raises :class:`StateError`.
    2D flux pairs: a (alpha_x, alpha_y) tuple.
    """
    interior = field.interior
    if isinstance(model, EulerModel):
        model.validate(interior)
        rho, u, P = model.primitive(interior)
        return float(np.max(np.abs(u) + np.sqrt(model.gamma * P / rho)))
    if isinstance(model, FluxPair2D):
        lo = float(np.min(interior))
        hi = float(np.max(interior))
        return (model.fx.speed_bound(lo, hi), model.fy.speed_bound(lo, hi))
    lo = float(np.min(interior))
    hi = float(np.max(interior))
    return float(model.speed_bound(lo, hi))


# ---------------------------------------------------------------------------
# Exact solution of the Euler Riemann problem (ideal gas), used for shock
# tube references and admissible density ranges.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RiemannFan:
    """Self-similar solution of a 1D Euler Riemann problem.

    ``left``/``right`` are (rho, u, P) triples; star values describe the
    intermediate states separated by the contact.
    """

    left: tuple
    right: tuple
    p_star: float
    u_star: float
    rho_star_left: float
    rho_star_right: float
    gamma: float = GAMMA

    def density_range(self):
        rhos = [self.left[0], self.right[0], self.rho_star_left, self.rho_star_right]
        return min(rhos), max(rhos)

    def sample(self, xi):
        """Primitive state (rho, u, P) at similarity coordinates xi = x/t."""
        xi = np.asarray(xi, dtype=float)
        g = self.gamma
        rho = np.empty_like(xi)
        u = np.empty_like(xi)
        P = np.empty_like(xi)
        rl, ul, pl = self.left
        rr, ur, pr = self.right
        cl = np.sqrt(g * pl / rl)
        cr = np.sqrt(g * pr / rr)
        ps, us = self.p_star, self.u_star

        left_of_contact = xi <= us
        # Left wave
        if ps > pl:  # shock
            sl = ul - cl * np.sqrt((g + 1.0) / (2.0 * g) * ps / pl + (g - 1.0) / (2.0 * g))
            region = left_of_contact & (xi < sl)
            rho[region], u[region], P[region] = rl, ul, pl
            region = left_of_contact & (xi >= sl)
            rho[region], u[region], P[region] = self.rho_star_left, us, ps
        else:  # rarefaction
            head = ul - cl
            csl = cl * (ps / pl) ** ((g - 1.0) / (2.0 * g))
            tail = us - csl
            region = left_of_contact & (xi < head)
            rho[region], u[region], P[region] = rl, ul, pl
            region = left_of_contact & (xi >= head) & (xi <= tail)
            cfan = (2.0 / (g + 1.0)) * (cl + 0.5 * (g - 1.0) * (ul - xi[region]))
            u[region] = (2.0 / (g + 1.0)) * (cl + 0.5 * (g - 1.0) * ul + xi[region])
            rho[region] = rl * (cfan / cl) ** (2.0 / (g - 1.0))
            P[region] = pl * (cfan / cl) ** (2.0 * g / (g - 1.0))
            region = left_of_contact & (xi > tail)
            rho[region], u[region], P[region] = self.rho_star_left, us, ps

        right_of_contact = ~left_of_contact
        if ps > pr:  # shock
            sr = ur + cr * np.sqrt((g + 1.0) / (2.0 * g) * ps / pr + (g - 1.0) / (2.0 * g))
            region = right_of_contact & (xi > sr)
            rho[region], u[region], P[region] = rr, ur, pr
            region = right_of_contact & (xi <= sr)
            rho[region], u[region], P[region] = self.rho_star_right, us, ps
        else:  # rarefaction
            head = ur + cr
            csr = cr * (ps / pr) ** ((g - 1.0) / (2.0 * g))
            tail = us + csr
            region = right_of_contact & (xi > head)
            rho[region], u[region], P[region] = rr, ur, pr
            region = right_of_contact & (xi >= tail) & (xi <= head)
            cfan = (2.0 / (g + 1.0)) * (cr - 0.5 * (g - 1.0) * (ur - xi[region]))
            u[region] = (2.0 / (g + 1.0)) * (-cr + 0.5 * (g - 1.0) * ur + xi[region])
            rho[region] = rr * (cfan / cr) ** (2.0 / (g - 1.0))
            P[region] = pr * (cfan / cr) ** (2.0 * g / (g - 1.0))
            region = right_of_contact & (xi < tail)
            rho[region], u[region], P[region] = self.rho_star_right, us, ps

        return rho, u, P


def _pressure_fn(p, state, gamma):
    rho, u, P = state
    c = np.sqrt(gamma * P / rho)
    if p > P:  # shock branch
        A = 2.0 / ((gamma + 1.0) * rho)
        B = (gamma - 1.0) / (gamma + 1.0) * P
        f = (p - P) * np.sqrt(A / (p + B))
        df = np.sqrt(A / (B + p)) * (1.0 - 0.5 * (p - P) / (B + p))
    else:  # rarefaction branch
        f = 2.0 * c / (gamma - 1.0) * ((p / P) ** ((gamma - 1.0) / (2.0 * gamma)) - 1.0)
        df = 1.0 / (rho * c) * (p / P) ** (-(gamma + 1.0) / (2.0 * gamma))
    return f, df


def exact_riemann(left, right, gamma=GAMMA) -> RiemannFan:
    """Solve the Riemann problem for primitive states (rho, u, P).

    Newton iteration on the pressure function with a two-rarefaction
    initial guess; falls back to bisection if Newton stalls.
    """
    rl, ul, pl = left
    rr, ur, pr = right
    cl = np.sqrt(gamma * pl / rl)
    cr = np.sqrt(gamma * pr / rr)
    du = ur - ul

    # two-rarefaction guess
    z = (gamma - 1.0) / (2.0 * gamma)
    p = ((cl + cr - 0.5 * (gamma - 1.0) * du) / (cl / pl**z + cr / pr**z)) ** (1.0 / z)
    p = max(p, 1e-12)

    def total(p):
        fl, dfl = _pressure_fn(p, left, gamma)
        fr, dfr = _pressure_fn(p, right, gamma)
        return fl + fr + du, dfl + dfr

    converged = False
    for _ in range(100):
        f, df = total(p)
        step = f / df
        pn = p - step
        if pn <= 0.0:
            pn = 0.5 * p
        if abs(pn - p) <= 1e-14 * max(pn, p):
            p = pn
            converged = True
            break
        p = pn
    if not converged:
        lo, hi = 1e-12, max(pl, pr)
        while total(hi)[0] < 0.0:
            hi *= 2.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if total(mid)[0] > 0.0:
                hi = mid
            else:
                lo = mid
        p = 0.5 * (lo + hi)

    fl, _ = _pressure_fn(p, left, gamma)
    fr, _ = _pressure_fn(p, right, gamma)
    us = 0.5 * (ul + ur) + 0.5 * (fr - fl)

    gm = (gamma - 1.0) / (gamma + 1.0)
    if p > pl:
        rsl = rl * (p / pl + gm) / (gm * p / pl + 1.0)
    else:
        rsl = rl * (p / pl) ** (1.0 / gamma)
    if p > pr:
        rsr = rr * (p / pr + gm) / (gm * p / pr + 1.0)
    else:
        rsr = rr * (p / pr) ** (1.0 / gamma)

    return RiemannFan(tuple(left), tuple(right), float(p), float(us),
                      float(rsl), float(rsr), gamma)
