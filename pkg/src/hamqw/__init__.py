"""Symmetric coined quantum walks on Hamming graphs H(d, n)."""

from .classical_walk import (
    ClassDistribution,
    ClassicalSpectrum,
    WalkWeights,
    brute_force_markov,
    custom_weights,
    eigenvalues,
    spectral_transition,
    weights_for,
)
from .hamming_scheme import (
    HammingParams,
    KrawtchoukTable,
    PrimalityError,
    SizeError,
    build_krawtchouk_table,
)
from .limit_distributions import (
    TimeAveragedDistribution,
    arcsine_pmf,
    cesaro_average,
    eigenprojection_limit,
    identity_suite,
    limit_closed_n2,
    limit_example,
    spectral_limit,
)
from .quantum_walk_engine import CoinSpec, HypothesisViolated, WaveVector, wave_vector
from .unit_circle_spectrum import ModeSpectrum, build_poly, mode_spectrum, roots

__version__ = "0.1.0"
