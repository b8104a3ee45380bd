"""A quick tour of the five nonlinear weight families.

Feeds the same five-cell windows to JS, M, Z, ZR and ZL weights and prints
how each family reacts: all of them reproduce the linear weights on smooth
data, and all of them shut off substencils that straddle a jump, but they
differ in how hard they shut them off -- which is exactly what controls
numerical dissipation at discontinuities.
"""

import numpy as np

from fvweno import WeightScheme, nonlinear_weights, smoothness_indicators
from fvweno.weno import D_EDGE

FAMILIES = [
    WeightScheme.js(eps=1e-12),
    WeightScheme.m(),
    WeightScheme.z(),
    WeightScheme.zr(p=2),
    WeightScheme.zl(p=2, q=1),
]


def show(title, window):
    window = np.asarray(window, dtype=float)
    beta = smoothness_indicators(window)
    print(f"\n{title}")
    print(f"  window = {window}")
    print(f"  beta   = {np.array2string(beta, precision=4)}")
    print(f"  linear = {np.array2string(D_EDGE, precision=4)}")
    for scheme in FAMILIES:
        om = nonlinear_weights(beta, scheme)
        print(f"  {scheme.label:12s} -> {np.array2string(om, precision=4)}")


# smooth data: every family stays within O(dx^2) of the linear weights
x = np.linspace(-0.1, 0.1, 5)
show("smooth window (sine samples)", np.sin(np.pi * x))

# the jump sits in the two rightmost cells: omega_2 must vanish
show("jump enters from the right", [1.0, 1.0, 1.0, 1.0, 0.0])

# the jump splits the window down the middle: only substencil 0 is clean
show("jump through the middle", [1.0, 1.0, 1.0, 0.0, 0.0])

# scale sensitivity: the log-based ZL indicator saturates when the jump is
# large, pulling its weights back toward the linear ones
show("large jump (x100)", [100.0, 100.0, 100.0, 0.0, 0.0])

print("""
Note how ZL's omega_0 is much farther from 1 on the large jump than Z's:
tau_ZL grows only logarithmically with the jump while the denominators
grow quadratically.  Small p (e.g. 1/7) postpones this saturation.
""")
