# The limiting distribution by three routes
#
# spectral : projections onto degenerate eigenspaces of the step operator
# series   : block sums F, F0, F_t for a single-node start
# closed   : geometric resummation in z = 3 - 2 sqrt 2

import numpy as np

from cyclewalk import closed_form as cf
from cyclewalk.spectral import degeneracy_classes, limiting_distribution_spectral
from cyclewalk.states import localized_state

for d in (5, 8, 24):
    cls = degeneracy_classes(d)
    pairs = sum(len(c) == 2 for c in cls.classes)
    print(f"d={d:2d}: {len(cls)} eigenvalue classes, {pairs} of them doubly degenerate")

worst = 0.0
for d in range(6, 41, 2):
    for v0 in range(d):
        spec = limiting_distribution_spectral(localized_state(d, v0)).probs
        for route in ("series", "closed"):
            other = cf.limiting_distribution_localized(d, v0, route=route).probs
            worst = max(worst, np.abs(spec - other).max())
print(f"largest disagreement over even d in 6..40, all start nodes: {worst:.1e}")

# The correction term near the start node, next to its large-d limit.
d = 2002
ctx = cf.ClosedFormContext.build(d, 0)
print("\n delta   Pi(d=2002)   asymptotic")
for delta in range(5):
    exact = cf.correction_pi(d, delta)
    limit = cf.asymptotic_correction(delta, d // 2 - delta, ctx.xi)
    print(f"{delta:6d} {exact:12.6f} {limit:12.6f}")
