"""Optical bench model: elements, chains and the two rotator setups.

Only Faraday rotators occupy space along z; every other element is a
zero-length plane sitting at the end of the preceding rotator.
"""

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import polarization as pol


@dataclass(frozen=True)
class FaradayRotator:
    angle: float
    length: float = 0.0
    kind = "faraday"

    def __post_init__(self):
        if not (math.isfinite(self.angle) and math.isfinite(self.length)):
            raise ValueError("FaradayRotator parameters must be finite")
        if self.length < 0:
            raise ValueError(f"FaradayRotator length must be >= 0, got {self.length!r}")

    def jones(self):
        return pol.rotator_matrix(self.angle)

    def mueller(self):
        return pol.mueller_from_jones(self.jones())


@dataclass(frozen=True)
class LinearPolarizer:
    axis: float
    extinction: float = 0.0
    kind = "polarizer"
    length = 0.0

    def __post_init__(self):
        if not math.isfinite(self.axis):
            raise ValueError("LinearPolarizer axis must be finite")
        if not 0.0 <= self.extinction < 1.0:
            raise ValueError(f"extinction must lie in [0, 1), got {self.extinction!r}")

    def jones(self):
        return pol.polarizer_matrix(self.axis, self.extinction)

    def mueller(self):
        return pol.mueller_from_jones(self.jones())


@dataclass(frozen=True)
class Waveplate:
    retardance: float
    fast_axis: float = 0.0
    kind = "waveplate"
    length = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.retardance) and math.isfinite(self.fast_axis)):
            raise ValueError("Waveplate parameters must be finite")

    def jones(self):
        return pol.waveplate_matrix(self.retardance, self.fast_axis)

    def mueller(self):
        return pol.mueller_from_jones(self.jones())


@dataclass(frozen=True)
class Attenuator:
    transmittance: float
    kind = "attenuator"
    length = 0.0

    def __post_init__(self):
        if not 0.0 <= self.transmittance <= 1.0:
            raise ValueError(f"transmittance must lie in [0, 1], got {self.transmittance!r}")

    def jones(self):
        return np.sqrt(self.transmittance) * np.eye(2, dtype=complex)

    def mueller(self):
        return pol.attenuator_mueller(self.transmittance)


@dataclass(frozen=True)
class Depolarizer:
    p: float
    kind = "depolarizer"
    length = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"Depolarizer p must lie in [0, 1], got {self.p!r}")

    def jones(self):
        raise TypeError("a depolarizer has no Jones matrix; propagate via Mueller")

    def mueller(self):
        return pol.depolarizer_mueller(self.p)


ELEMENT_TYPES = (FaradayRotator, LinearPolarizer, Waveplate, Attenuator, Depolarizer)


@dataclass(frozen=True)
class ElementChain:
    elements: tuple
    input: np.ndarray = field(compare=False)
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "input", np.asarray(self.input, dtype=complex))

    def __len__(self):
        return len(self.elements)

    @property
    def total_length(self):
        return float(sum(e.length for e in self.elements))

    @property
    def needs_mueller(self):
        return any(isinstance(e, Depolarizer) for e in self.elements)

    def positions(self):
        """z coordinate at the exit face of each element."""
        return np.cumsum([e.length for e in self.elements])


def _check_setup(N, total_length, I0):
    if int(N) != N or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    if not total_length > 0:
        raise ValueError(f"total_length must be > 0, got {total_length!r}")
    if not I0 >= 0:
        raise ValueError(f"I0 must be >= 0, got {I0!r}")


def build_unmeasured_chain(N, total_angle=np.pi / 2, total_length=1.0, I0=1.0):
    """N identical rotators splitting ``total_angle`` evenly, y-polarized input."""
    _check_setup(N, total_length, I0)
    N = int(N)
    rot = FaradayRotator(total_angle / N, total_length / N)
    return ElementChain(
        (rot,) * N,
        pol.linear_polarized(I0, pol.Y_AXIS),
        label=f"unmeasured N={N}",
    )


def build_measured_chain(N, total_angle=np.pi / 2, total_length=1.0, I0=1.0, measure_axis=pol.Y_AXIS):
    """Same rotators as :func:`build_unmeasured_chain`, each followed by a polarizer."""
    _check_setup(N, total_length, I0)
    N = int(N)
    rot = FaradayRotator(total_angle / N, total_length / N)
    meas = LinearPolarizer(measure_axis)
    return ElementChain(
        (rot, meas) * N,
        pol.linear_polarized(I0, pol.Y_AXIS),
        label=f"measured N={N}",
    )


def propagate(chain):
    """Push the chain input through every element.

    Returns ``(output, states)`` where ``states[k]`` is the state right after
    element ``k``. If any element is a :class:`Depolarizer` the whole run uses
    Stokes vectors and Mueller matrices; otherwise Jones vectors.
    """
    if len(chain.elements) == 0:
        raise ValueError("cannot propagate an empty chain")
    if chain.needs_mueller:
        state = pol.stokes_from_jones(chain.input)
        mats = [e.mueller() for e in chain.elements]
    else:
        state = chain.input
        mats = [e.jones() for e in chain.elements]
    states = []
    for m in mats:
        state = m @ state
        states.append(state)
    return states[-1], states


def output_intensity(chain):
    out, _ = propagate(chain)
    return float(out[0]) if chain.needs_mueller else pol.intensity(out)


def truncate(chain, z):
    """Chain covering only ``[0, z]``.

    A rotator straddling ``z`` is cut, keeping the fraction of its angle that
    lies before ``z``. Zero-length elements located at or before ``z`` are kept.
    """
    if not 0 <= z <= chain.total_length:
        raise ValueError(f"z={z!r} outside [0, {chain.total_length}]")
    kept = []
    start = 0.0
    for e in chain.elements:
        if e.length == 0:
            if start <= z:
                kept.append(e)
            continue
        end = start + e.length
        if end <= z:
            kept.append(e)
        elif start < z:
            frac = (z - start) / e.length
            kept.append(replace(e, angle=e.angle * frac, length=z - start))
        start = end
    return ElementChain(tuple(kept), chain.input, label=chain.label)


class ChainFormatError(ValueError):
    """Malformed chain description; ``index`` names the offending element."""

    def __init__(self, message, index=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if index is not None:
            where.append(f"element {index}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.index = index
        self.line = line


def _num(d, key, index, default=None):
    if key not in d:
        if default is None:
            raise ChainFormatError(f"missing field {key!r}", index)
        return default
    value = d[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ChainFormatError(f"field {key!r} must be a number", index)
    return float(value)


def element_from_dict(d, index=None):
    if not isinstance(d, dict):
        raise ChainFormatError("element must be an object", index)
    kind = d.get("kind")
    try:
        if kind == "faraday":
            return FaradayRotator(
                math.radians(_num(d, "angle_deg", index)),
                _num(d, "length_m", index, 0.0),
            )
        if kind == "polarizer":
            return LinearPolarizer(
                math.radians(_num(d, "axis_deg", index)),
                _num(d, "extinction", index, 0.0),
            )
        if kind == "waveplate":
            return Waveplate(
                math.radians(_num(d, "retardance_deg", index)),
                math.radians(_num(d, "fast_axis_deg", index, 0.0)),
            )
        if kind == "attenuator":
            return Attenuator(_num(d, "transmittance", index))
        if kind == "depolarizer":
            return Depolarizer(_num(d, "p", index))
    except ChainFormatError:
        raise
    except ValueError as exc:
        raise ChainFormatError(str(exc), index) from exc
    raise ChainFormatError(f"unknown element kind {kind!r}", index)


def element_to_dict(e):
    if isinstance(e, FaradayRotator):
        return {"kind": "faraday", "angle_deg": math.degrees(e.angle), "length_m": e.length}
    if isinstance(e, LinearPolarizer):
        return {"kind": "polarizer", "axis_deg": math.degrees(e.axis), "extinction": e.extinction}
    if isinstance(e, Waveplate):
        return {
            "kind": "waveplate",
            "retardance_deg": math.degrees(e.retardance),
            "fast_axis_deg": math.degrees(e.fast_axis),
        }
    if isinstance(e, Attenuator):
        return {"kind": "attenuator", "transmittance": e.transmittance}
    if isinstance(e, Depolarizer):
        return {"kind": "depolarizer", "p": e.p}
    raise TypeError(f"not an optical element: {e!r}")


def chain_from_dict(d):
    """Build a chain from the JSON description.

    ``{"input": {"intensity": I0, "axis_deg": a}, "elements": [...]}``; the
    input is linearly polarized.
    """
    if not isinstance(d, dict):
        raise ChainFormatError("top level must be an object")
    inp = d.get("input")
    if not isinstance(inp, dict):
        raise ChainFormatError("missing 'input' object")
    I0 = _num(inp, "intensity", None)
    axis = math.radians(_num(inp, "axis_deg", None))
    if I0 < 0:
        raise ChainFormatError("input intensity must be >= 0")
    raw = d.get("elements")
    if not isinstance(raw, list) or not raw:
        raise ChainFormatError("'elements' must be a non-empty list")
    elements = tuple(element_from_dict(e, i) for i, e in enumerate(raw))
    return ElementChain(elements, pol.linear_polarized(I0, axis), label=str(d.get("label", "")))


def loads_chain(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChainFormatError(exc.msg, line=exc.lineno) from exc
    return chain_from_dict(d)


def load_chain(path):
    with open(path, encoding="utf-8") as fh:
        return loads_chain(fh.read())
