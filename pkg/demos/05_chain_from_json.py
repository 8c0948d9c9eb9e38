"""
Describing a bench in JSON
==========================

The same format the ``zenoptics chain`` command reads. Here: four 22.5 deg
rotators each followed by a y polarizer, a lossy variant, and a
depolarizing variant that forces Stokes/Mueller propagation.
"""

import json

from zenoptics import elements as el

step = {"kind": "faraday", "angle_deg": 22.5, "length_m": 0.25}
measure = {"kind": "polarizer", "axis_deg": 90, "extinction": 0.0}
bench = {"input": {"intensity": 1.0, "axis_deg": 90}, "elements": [step, measure] * 4}
print(json.dumps(bench)[:120], "...")

chain = el.chain_from_dict(bench)
print("ideal bench output:", el.output_intensity(chain))

lossy = dict(bench, elements=[{"kind": "attenuator", "transmittance": 0.98}] + bench["elements"])
print("with 2% loss up front:", el.output_intensity(el.chain_from_dict(lossy)))

noisy = dict(bench, elements=bench["elements"][:2] + [{"kind": "depolarizer", "p": 0.9}] + bench["elements"][2:])
out, _ = el.propagate(el.chain_from_dict(noisy))
print("with a depolarizer (Stokes output):", out)

try:
    el.chain_from_dict(dict(bench, elements=[{"kind": "mirror"}]))
except el.ChainFormatError as exc:
    print("rejected:", exc)
