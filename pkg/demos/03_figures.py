# Numbers behind the figures
#
# Writes CSV/JSON tables into ./figures (override with argv[1]) and prints
# the headline values.  No plotting here; feed the CSVs to any plotting tool.

import json
import sys
from pathlib import Path

from cyclewalk.cli import reproduce

out = Path(sys.argv[1] if len(sys.argv) > 1 else "figures")
for fig in ("fig1", "fig3", "fig4", "fig5"):
    reproduce(fig, out)

fig1 = json.loads((out / "fig1_meta.json").read_text())
for name, curve in fig1["curves"].items():
    kind = "peak" if curve["correction_at_opposite"] > 0 else "dip"
    print(f"Fig. 1 {name}: {kind} at the opposite node, d*pi - 1 = {curve['correction_at_opposite']:+.4f}")

fig3 = json.loads((out / "fig3_meta.json").read_text())
for name, curve in fig3["curves"].items():
    print(f"Fig. 3 {name}: largest correction {curve['max_correction']:.4f}")

fig4 = json.loads((out / "fig4_meta.json").read_text())
print(f"Fig. 4: drift over 200 steps {fig4['max_drift_over_200_steps']:.1e}, "
      f"TV from uniform {fig4['tv_initial_from_uniform']:.3f}")

fig5 = json.loads((out / "fig5_meta.json").read_text())
print(f"Fig. 5: TV from uniform {fig5['tv_initial_from_uniform']:.3f} -> {fig5['tv_limiting_from_uniform']:.3f}")
