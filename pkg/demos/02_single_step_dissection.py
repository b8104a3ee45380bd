"""Dissecting one TVD-RK3 step on the advected Riemann problem.

Advects a unit jump one time step at Courant number 0.5 and prints, stage
by stage, the nonlinear weights at the interfaces around the jump, the
numerical fluxes they produce, and the cell errors against the exact
translated averages.  The closed-form error expressions evaluated with the
captured weights agree with the solver to near machine precision -- the
point of the exercise: each family's dissipation at the final time is
already visible in the very first step.
"""

from fvweno import RiemannSetup, analyze_step, final_time_comparison, render_table
from fvweno.dissect import classic_schemes, final_time_schemes

setup = RiemannSetup(u_left=1.0, u_right=0.0, nu=0.5, schemes=classic_schemes())
stage1, stage2, stage3 = analyze_step(setup)

for report in (stage1, stage2, stage3):
    print(render_table(report, "weights").to_text())
    print()
    print(render_table(report, "solutions").to_text())
    print()
    worst = max(
        abs(report.formula_errors[label] - report.measured_errors[label]).max()
        for label in report.solutions
    )
    print(f"stage {report.stage}: closed-form errors match the solver to "
          f"{worst:.2e}\n")

print("advecting the same jump to T = 1 (200 steps):")
print(final_time_comparison(RiemannSetup(schemes=final_time_schemes())).to_text())
print("""
The |error| ordering JS >= M >= Z >= ZR at the cells bracketing the jump
matches the single-step ranking above.
""")
