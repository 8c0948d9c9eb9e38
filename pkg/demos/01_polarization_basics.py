"""
Jones calculus basics
=====================

Rotators, polarizers and waveplates as 2x2 complex matrices, and the
Mueller lift used when light is partially polarized.
"""

import numpy as np

import zenoptics as zo

# A y-polarized beam of unit intensity
beam = zo.linear_polarized(1.0, np.pi / 2)
print("input", beam, "intensity", zo.intensity(beam))

# Rotating the plane by alpha leaves cos^2(alpha) of the light along y
for deg in (0, 30, 45, 60, 90):
    out = zo.apply(zo.rotator_matrix(np.radians(deg)), beam)
    print(f"rotate {deg:>2} deg -> y intensity {zo.intensity_along(out, np.pi / 2):.4f}")

# A polarizer is a projection: applying it twice changes nothing
P = zo.polarizer_matrix(0.3)
print("P @ P == P:", np.allclose(P @ P, P))

# compose() takes matrices in beam order: the first one acts first
M = zo.compose([zo.rotator_matrix(np.pi / 4), zo.polarizer_matrix(np.pi / 2)])
print("rotate 45 deg then measure along y:", zo.intensity(zo.apply(M, beam)))

# A quarter-wave plate turns 45 deg linear light circular
circ = zo.apply(zo.waveplate_matrix(np.pi / 2, 0.0), zo.linear_polarized(1.0, np.pi / 4))
print("Stokes after QWP:", np.round(zo.stokes_from_jones(circ), 12))

# Mueller matrices handle what Jones cannot: a depolarizer
s = zo.stokes_from_jones(beam)
s = zo.depolarizer_mueller(0.5) @ s
print("degree of polarization after depolarizer:", zo.degree_of_polarization(s))
