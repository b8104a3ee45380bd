"""Experiment execution: single runs, convergence studies, references, CSV."""

from __future__ import annotations

import functools
import time as _time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ConfigurationError
from ..integrate import TimeControl, integrate_to
from ..mesh import CellField, Grid1D
from ..solver import SemiDiscreteOp1D, SemiDiscreteOp2D
from ..weno import WeightScheme
from .norms import ErrorReport, norms
from .problems import Problem, get_problem

REFERENCE_SCHEME = WeightScheme.m()


@dataclass(frozen=True)
class RunConfig:
    problem: str
    scheme: WeightScheme
    n: object = None              # cell count (int or (nx, ny)); registry default if None
    cfl: float = None
    dt_scale: float = None
    tfinal: float = None
    out_dir: str = None
    seed: int = 0
    with_reference: bool = True

    def resolve(self):
        prob = get_problem(self.problem)
        n = self.n if self.n is not None else prob.default_n
        if self.cfl is not None and self.dt_scale is not None:
            raise ConfigurationError("give either cfl or dt-scale, not both")
        if self.dt_scale is not None:
            tc = TimeControl("dt_scale", self.dt_scale)
        elif self.cfl is not None:
            tc = TimeControl("cfl", self.cfl)
        else:
            tc = prob.time
        tfinal = self.tfinal if self.tfinal is not None else prob.tfinal
        return prob, n, tc, tfinal


@dataclass
class RunResult:
    problem: Problem
    grid: object
    final: CellField
    exact: CellField = None
    reference: CellField = None
    report: ErrorReport = None
    steps: int = 0
    wall_time: float = 0.0
    paths: dict = field(default_factory=dict)


def make_operator(prob: Problem, scheme: WeightScheme):
    if prob.kind in ("scalar1d", "euler1d"):
        return SemiDiscreteOp1D(prob.model, scheme, prob.bc)
    if prob.kind == "scalar2d":
        return SemiDiscreteOp2D(prob.model, scheme, prob.bc)
    raise ConfigurationError(f"unknown problem kind {prob.kind!r}")


def solve(prob: Problem, scheme: WeightScheme, n, tc: TimeControl, tfinal):
    grid = prob.make_grid(n)
    op = make_operator(prob, scheme)
    u = prob.initial(grid)
    steps = [0]

    def count(step, t, field):
        steps[0] = step

    u = integrate_to(u, op, tfinal, tc, step_callback=count)
    return grid, u, steps[0]


def restrict_to(fine: CellField, grid):
    """Average fine cells down to a coarser grid (1D, integer ratio)."""
    fgrid = fine.grid
    if not isinstance(fgrid, Grid1D):
        raise ConfigurationError("restriction implemented for 1D grids only")
    ratio = fgrid.n // grid.n
    if grid.n * ratio != fgrid.n:
        raise ConfigurationError("fine cell count must be a multiple of the coarse")
    vals = fine.interior.reshape(fine.ncomp, grid.n, ratio).mean(axis=2)
    return CellField.from_interior(grid, vals)


def reference_solution(prob: Problem, grid, tfinal=None) -> CellField:
    """Reference cell averages on ``grid`` for problems without a closed form.

    ``characteristics`` problems use their exact hook; ``fine_grid`` runs
    the same problem on >= ``reference_cells`` cells with the mapped-weight
    scheme and averages down.
    """
    tfinal = prob.tfinal if tfinal is None else tfinal
    if prob.exact is not None:
        return prob.exact(grid, tfinal)
    if prob.reference != "fine_grid":
        raise ConfigurationError(f"problem {prob.pid} has no reference strategy")
    ratio = max(1, int(np.ceil(prob.reference_cells / grid.n)))
    nfine = grid.n * ratio
    _, fine, _ = solve(prob, REFERENCE_SCHEME, nfine, prob.time, tfinal)
    return restrict_to(fine, grid)


def run_problem(cfg: RunConfig) -> RunResult:
    """Execute one experiment; write CSVs and a manifest when out_dir is set."""
    prob, n, tc, tfinal = cfg.resolve()
    t0 = _time.perf_counter()
    grid, final, steps = solve(prob, cfg.scheme, n, tc, tfinal)
    wall = _time.perf_counter() - t0

    exact = prob.exact(grid, tfinal) if prob.exact is not None else None
    reference = None
    if exact is None and prob.reference and cfg.with_reference and not prob.expensive_reference:
        reference = reference_solution(prob, grid, tfinal)

    report = None
    compare = exact if exact is not None else reference
    if compare is not None:
        report = ErrorReport()
        l1, l2, linf = norms(final, compare)
        report.add(_n_label(n), l1, l2, linf)

    result = RunResult(prob, grid, final, exact, reference, report, steps, wall)
    if cfg.out_dir is not None:
        result.paths = _write_outputs(cfg, result, tc, tfinal)
    return result


def _n_label(n):
    return int(n) if np.isscalar(n) else int(n[0])


def convergence_study(problem_id, scheme, n_list, time=None, tfinal=None) -> ErrorReport:
    """Errors and observed orders over a refinement sequence."""
    report = ErrorReport()
    for n in n_list:
        l1, l2, linf = _study_point(problem_id, scheme, _freeze_n(n),
                                    time, tfinal)
        report.add(_n_label(n), l1, l2, linf)
    return report


def _freeze_n(n):
    return int(n) if np.isscalar(n) else tuple(int(v) for v in n)


@functools.lru_cache(maxsize=None)
def _study_point(problem_id, scheme, n, time, tfinal):
    prob = get_problem(problem_id)
    tc = time if time is not None else prob.time
    tf = tfinal if tfinal is not None else prob.tfinal
    grid, final, _ = solve(prob, scheme, n, tc, tf)
    if prob.exact is not None:
        compare = prob.exact(grid, tf)
    else:
        compare = reference_solution(prob, grid, tf)
    return norms(final, compare)


# --- output files ----------------------------------------------------------

def _fmt(v):
    return f"{v:.17g}"


def write_solution_csv(path, field: CellField, kind):
    grid = field.grid
    with open(path, "w") as f:
        if isinstance(grid, Grid1D):
            if field.ncomp == 3:
                f.write("x,rho,momentum,energy\n")
                for x, row in zip(grid.centers(), field.interior.T):
                    f.write(f"{_fmt(x)},{_fmt(row[0])},{_fmt(row[1])},{_fmt(row[2])}\n")
            else:
                f.write("x,u\n")
                for x, v in zip(grid.centers(), field.interior[0]):
                    f.write(f"{_fmt(x)},{_fmt(v)}\n")
        else:
            f.write("x,y,u\n")
            xs, ys = grid.xcenters(), grid.ycenters()
            vals = field.interior[0]
            for i, x in enumerate(xs):
                for j, y in enumerate(ys):
                    f.write(f"{_fmt(x)},{_fmt(y)},{_fmt(vals[i, j])}\n")


def _write_outputs(cfg: RunConfig, result: RunResult, tc, tfinal):
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {}

    sol = out / "solution.csv"
    write_solution_csv(sol, result.final, result.problem.kind)
    paths["solution"] = str(sol)

    if result.report is not None:
        err = out / "errors.csv"
        err.write_text(result.report.to_csv())
        paths["errors"] = str(err)
    if result.reference is not None:
        ref = out / "reference.csv"
        write_solution_csv(ref, result.reference, result.problem.kind)
        paths["reference"] = str(ref)

    manifest = out / "manifest.txt"
    lines = {
        "problem": cfg.problem,
        "scheme": cfg.scheme.label,
        "eps": f"{cfg.scheme.eps:g}",
        "n": str(result.grid.n if isinstance(result.grid, Grid1D)
                 else (result.grid.nx, result.grid.ny)),
        "time_mode": tc.mode,
        "time_value": f"{tc.value:g}",
        "tfinal": f"{tfinal:g}",
        "seed": str(cfg.seed),
        "steps": str(result.steps),
        "wall_time_s": f"{result.wall_time:.3f}",
    }
    manifest.write_text("".join(f"{k} = {v}\n" for k, v in lines.items()))
    paths["manifest"] = str(manifest)

    gp = out / "plot.gp"
    if result.problem.kind == "scalar2d":
        gp.write_text(
            "set datafile separator ','\n"
            "set pm3d map\n"
            f"splot 'solution.csv' using 1:2:3 with pm3d title '{cfg.problem}'\n"
        )
    else:
        col = 2
        extra = ""
        if result.reference is not None:
            extra = ", 'reference.csv' using 1:2 with lines title 'reference'"
        gp.write_text(
            "set datafile separator ','\n"
            f"plot 'solution.csv' using 1:{col} with linespoints title '{cfg.problem}'{extra}\n"
        )
    paths["plot"] = str(gp)
    return paths
