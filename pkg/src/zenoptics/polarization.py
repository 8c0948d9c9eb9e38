"""Jones and Mueller calculus for 2x2 / 4x4 polarization transfer.

States and transfer matrices are plain numpy arrays:

* Jones vector   -- complex, shape (2,), amplitudes ``(ex, ey)`` in sqrt(intensity)
* Jones matrix   -- complex, shape (2, 2)
* Stokes vector  -- real, shape (4,), ``(s0, s1, s2, s3)`` with ``s1 = |ex|^2 - |ey|^2``
* Mueller matrix -- real, shape (4, 4)

Angles are radians measured from +x; a positive rotation moves +x toward +y.
Global phase is carried, never normalized away.
"""

from functools import reduce

import numpy as np

X_AXIS = 0.0
Y_AXIS = np.pi / 2

# maps the coherency vector (ex ex*, ex ey*, ey ex*, ey ey*) onto Stokes parameters
_A = np.array(
    [
        [1, 0, 0, 1],
        [1, 0, 0, -1],
        [0, 1, 1, 0],
        [0, 1j, -1j, 0],
    ],
    dtype=complex,
)
_A_INV = np.linalg.inv(_A)


def _finite(name, *values):
    for value in values:
        if not np.all(np.isfinite(value)):
            raise ValueError(f"{name} must be finite, got {value!r}")


def jones_vector(ex, ey):
    _finite("jones_vector", ex, ey)
    return np.array([ex, ey], dtype=complex)


def linear_polarized(intensity, axis):
    """Linearly polarized state of the given intensity along ``axis`` (radians)."""
    _finite("linear_polarized", intensity, axis)
    if intensity < 0:
        raise ValueError(f"intensity must be >= 0, got {intensity!r}")
    amp = np.sqrt(intensity)
    return np.array([amp * np.cos(axis), amp * np.sin(axis)], dtype=complex)


def rotator_matrix(alpha):
    """Rotation of the polarization plane by ``alpha`` (Faraday rotator)."""
    _finite("alpha", alpha)
    c, s = np.cos(alpha), np.sin(alpha)
    return np.array([[c, -s], [s, c]], dtype=complex)


def polarizer_matrix(theta, extinction=0.0):
    """Linear polarizer with transmission axis at ``theta``.

    ``extinction`` is the intensity leakage on the blocked axis; the blocked
    amplitude is scaled by ``sqrt(extinction)``. The default is the ideal
    projector ``[[cos^2, cos sin], [cos sin, sin^2]]``.
    """
    _finite("theta", theta, extinction)
    if not 0.0 <= extinction < 1.0:
        raise ValueError(f"extinction must lie in [0, 1), got {extinction!r}")
    c, s = np.cos(theta), np.sin(theta)
    leak = np.sqrt(extinction)
    return np.array(
        [
            [c * c + leak * s * s, c * s * (1 - leak)],
            [c * s * (1 - leak), s * s + leak * c * c],
        ],
        dtype=complex,
    )


def waveplate_matrix(retardance, fast_axis):
    """Linear retarder: the slow axis lags the fast axis by ``retardance``."""
    _finite("waveplate_matrix", retardance, fast_axis)
    c, s = np.cos(fast_axis), np.sin(fast_axis)
    rot = np.array([[c, -s], [s, c]])
    return rot @ np.diag([1.0, np.exp(1j * retardance)]) @ rot.T


def apply(m, v):
    return np.asarray(m) @ np.asarray(v)


def compose(ms):
    """Collapse a beam-ordered list of matrices into one transfer matrix.

    The FIRST matrix in ``ms`` acts on the beam first, so the result is
    ``ms[-1] @ ... @ ms[1] @ ms[0]``. Works for Jones and Mueller matrices.
    """
    ms = list(ms)
    if not ms:
        raise ValueError("compose needs at least one matrix")
    return reduce(lambda acc, m: np.asarray(m) @ acc, ms[1:], np.asarray(ms[0]))


def intensity(v):
    v = np.asarray(v)
    return float(np.sum(np.abs(v) ** 2))


def intensity_along(v, theta):
    """Intensity of the component of ``v`` along the linear axis ``theta``."""
    v = np.asarray(v)
    amp = np.cos(theta) * v[0] + np.sin(theta) * v[1]
    return float(abs(amp) ** 2)


def stokes_from_jones(v):
    ex, ey = np.asarray(v, dtype=complex)
    cross = ex * np.conj(ey)
    return np.array(
        [
            abs(ex) ** 2 + abs(ey) ** 2,
            abs(ex) ** 2 - abs(ey) ** 2,
            2 * cross.real,
            -2 * cross.imag,
        ]
    )


def degree_of_polarization(s):
    s = np.asarray(s, dtype=float)
    if s[0] == 0:
        return 0.0
    return float(np.sqrt(s[1] ** 2 + s[2] ** 2 + s[3] ** 2) / s[0])


def mueller_from_jones(j):
    """Lift a Jones matrix to the equivalent (non-depolarizing) Mueller matrix."""
    j = np.asarray(j, dtype=complex)
    _finite("mueller_from_jones", j)
    m = _A @ np.kron(j, np.conj(j)) @ _A_INV
    return m.real.copy()


def depolarizer_mueller(p):
    """Isotropic depolarizer retaining a fraction ``p`` of the polarized part."""
    _finite("p", p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"retained polarization fraction must lie in [0, 1], got {p!r}")
    return np.diag([1.0, p, p, p])


def attenuator_mueller(transmittance):
    return transmittance * np.eye(4)
