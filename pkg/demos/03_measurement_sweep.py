"""
Output intensity against the number of measurements
===================================================

``[cos^2(pi/2N)]^N`` climbs towards 1. The shortfall ``N (1 - ratio)``
approaches pi^2/4 only slowly, with a ``-pi^4/(32 N)`` correction.
"""

import math
from pathlib import Path

from zenoptics import PlotSpec, asymptotic_deficit, emit_svg, zeno_sweep

Ns = list(range(1, 101)) + [128, 256, 512, 1024, 4096, 10**5, 10**6]
sweep = zeno_sweep(Ns)

for N, ratio in sweep.rows:
    if N in (1, 2, 4, 10, 100, 1024, 10**6):
        print(f"N={N:>7}  ratio={ratio:.6f}  N(1-ratio)={asymptotic_deficit(N):.5f}")
print(f"limit pi^2/4 = {math.pi ** 2 / 4:.5f}")

out_dir = Path("demo_output")
out_dir.mkdir(exist_ok=True)
svg = emit_svg(PlotSpec([("I_out / I0", sweep.rows)], x_label="N", y_label="I_out / I0", y_range=(0, 1.05), log_x=True))
(out_dir / "sweep.svg").write_text(svg)
print("wrote", out_dir / "sweep.svg")
