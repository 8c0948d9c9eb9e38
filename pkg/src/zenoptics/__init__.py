"""Polarization rotation under repeated measurement: Jones/Mueller optics,
closed-form intensity laws, photon Monte Carlo and figure output."""

__version__ = "0.1.0"

from .polarization import (
    apply,
    compose,
    degree_of_polarization,
    depolarizer_mueller,
    intensity,
    intensity_along,
    jones_vector,
    linear_polarized,
    mueller_from_jones,
    polarizer_matrix,
    rotator_matrix,
    stokes_from_jones,
    waveplate_matrix,
)
from .elements import (
    Attenuator,
    ChainFormatError,
    Depolarizer,
    ElementChain,
    FaradayRotator,
    LinearPolarizer,
    Waveplate,
    build_measured_chain,
    build_unmeasured_chain,
    load_chain,
    propagate,
    truncate,
)
from .zeno import (
    IntensityTrace,
    ZenoConfig,
    ZenoSweepResult,
    asymptotic_deficit,
    continuous_intensity,
    measured_intensity,
    sample_trace,
    segment_of,
    zeno_output,
    zeno_sweep,
)
from .stochastic import (
    JitterConfig,
    MonteCarloConfig,
    SurvivalEstimate,
    jittered_output,
    mc_survival,
    mc_survival_exact_check,
)
from .svg import PlotSpec, emit_svg
