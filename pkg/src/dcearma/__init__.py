"""Simulation and verification toolkit for ARMA processes driven by
discrete-continuous excitation noise."""

__version__ = "0.1.0"

from .distributions import (  # noqa: E402
    DceDistribution,
    Gaussian,
    Uniform,
    bernoulli_gaussian,
    compose_sum_distribution,
    gaussian,
    rademacher,
    sample_excitation,
)
from .arma import (  # noqa: E402
    ArmaModel,
    SamplePath,
    ToeplitzSet,
    build_toeplitz,
    impulse_response,
    reconstruct_from_boundary,
    simulate_path,
    validate_model,
)
from .rng import stream  # noqa: E402
