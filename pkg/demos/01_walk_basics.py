# Hadamard walk on a cycle: one step at a time
#
# The state is 2d complex amplitudes; coin 0 moves the walker down one node,
# coin 1 moves it up one node, after a Hadamard coin flip on every node.

import numpy as np

from cyclewalk import (
    localized_state,
    node_distribution,
    evolve,
    step,
    time_averaged_distribution,
    tv_from_uniform,
)

d, v0 = 24, 5
psi = localized_state(d, v0)
print("start:", np.flatnonzero(node_distribution(psi).probs))

# After one step the walker splits evenly between the two neighbours.
p1 = node_distribution(step(psi)).probs
print("after one step:", {v: round(float(p), 3) for v, p in enumerate(p1) if p > 0})

# The instantaneous distribution keeps oscillating...
for n in (10, 11, 50, 51):
    print(f"n={n:3d}  TV from uniform = {tv_from_uniform(node_distribution(evolve(psi, n))):.3f}")

# ...while its running average settles down.
for n in (100, 1000, 10000):
    avg = time_averaged_distribution(psi, n)
    print(f"average over {n:5d} steps: p(v0)={avg[v0]:.5f}  p(v0+d/2)={avg[(v0 + d // 2) % d]:.5f}")
