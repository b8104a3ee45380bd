"""Scalar shock capturing: Burgers, a nonconvex flux, Buckley-Leverett.

Runs the three scalar benchmark problems with two contrasting weight
families and writes solution/reference CSVs (plus gnuplot scripts) under
demo_output/.  The sharper family hugs the reference more closely around
shock fronts; the reference is either exact (characteristics) or a
fine-grid run averaged down.
"""

from pathlib import Path

from fvweno import WeightScheme
from fvweno.harness import RunConfig, run_problem

OUT = Path("demo_output")

CASES = [
    ("burgers1d", WeightScheme.js()),
    ("burgers1d", WeightScheme.zl(p=5, q=1)),
    ("nonconvex-riemann", WeightScheme.zl(p=2, q=2)),
    ("nonconvex-stationary", WeightScheme.zl(p=2, q=1)),
    ("buckley-leverett", WeightScheme.zr(p=2)),
    ("buckley-leverett", WeightScheme.zl(p=1, q=1)),
]

for pid, scheme in CASES:
    out_dir = OUT / f"{pid}-{scheme.label.replace('(', '').replace(')', '').replace(',', '-').replace('=', '')}"
    result = run_problem(RunConfig(pid, scheme, out_dir=str(out_dir)))
    line = f"{pid:22s} {scheme.label:12s} {result.steps:4d} steps"
    if result.report is not None:
        _, l1, _, _, _, linf, _ = result.report.rows[-1]
        line += f"  L1={l1:.3e}  Linf={linf:.3e}"
    print(line)
    print(f"  -> {out_dir}/solution.csv (gnuplot: plot.gp)")
