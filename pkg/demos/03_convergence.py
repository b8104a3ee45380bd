"""Grid-convergence study on smooth advection.

Runs the sine advection problem to T = 8 with dt = 0.1*dx and prints the
L1/L2/Linf errors with observed orders.  With the time step tied to dx the
measured order settles around four: the reconstruction is fifth-order but
the flux differencing and the third-order time integrator cap what the
full scheme can show.  (The full five-scheme table is reproduced by
`weno golden accuracy-l1` and friends.)
"""

from fvweno import WeightScheme
from fvweno.harness import convergence_study

for scheme in (WeightScheme.js(), WeightScheme.zl(p=2, q=2)):
    report = convergence_study("advection1d-accuracy", scheme, (10, 20, 40, 80))
    print(f"advection1d-accuracy / {scheme.label}")
    print(report.to_csv())
