"""
Intensity along the rotators, with and without measurement
==========================================================

A quarter turn of Faraday rotation is split over N media. Without
measurement the y intensity falls smoothly to zero. With a y polarizer
after every medium the decay restarts from each polarizer and the beam
keeps more of its light the more often it is measured.
"""

from pathlib import Path

import numpy as np

from zenoptics import PlotSpec, ZenoConfig, emit_svg, measured_intensity, sample_trace, zeno_output

out_dir = Path("demo_output")
out_dir.mkdir(exist_ok=True)

series = []
for N in (1, 2, 4, 8, 16, 32):
    trace = sample_trace(ZenoConfig(N=N), "measured", samples_per_segment=50)
    series.append((f"N={N}", zip(trace.z, trace.intensity)))
    print(f"N={N:>2}: output intensity {zeno_output(ZenoConfig(N=N)):.4f}")

reference = sample_trace(ZenoConfig(N=32), "continuous", samples_per_segment=50)
series.append(("no measurement", zip(reference.z, reference.intensity)))

svg = emit_svg(
    PlotSpec(series, x_label="z (m)", y_label="intensity", y_range=(0, 1.05), dashed={"no measurement"})
)
(out_dir / "traces.svg").write_text(svg)
print("wrote", out_dir / "traces.svg")

# The measured curve is continuous at each polarizer but its slope is not:
# the polarizer resets the rotation, so the decay restarts with zero slope.
cfg = ZenoConfig(N=4)
h = 1e-6
for k in (1, 2, 3):
    zb = k / 4
    left = (measured_intensity(cfg, zb) - measured_intensity(cfg, zb - h)) / h
    right = (measured_intensity(cfg, zb + h) - measured_intensity(cfg, zb)) / h
    print(f"boundary z={zb:.2f}: slope left {left:+.4f}, right {right:+.4f}")
