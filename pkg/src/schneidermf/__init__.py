"""Multifractal analysis of digit power means for the Schneider map on pZ_p."""
from .errors import *  # noqa: F401,F403
from .means import birkhoff_potential_mean, power_mean
from .montecarlo import (MonteCarloEstimate, SamplerMode, estimate_mean, estimate_means,
                         sample_digit_model, sample_haar_point)
from .padic import PAdicInt, from_rational, invert_unit, valuation
from .schneider import DigitSequence, Termination, digits, reconstruct, schneider_step
from .specfun import (Branch, Method, PolylogResult, eulerian, gamma, lambert_w, polylog,
                      polylog_ds0, zeta, zeta_prime)
from .spectrum import (SpectrumPoint, dimension, geometric_example_series, haar_mean,
                       lambda_harmonic_closed_form, lambda_quadratic_closed_form,
                       legendre_oracle, lyapunov_dimension, mean_at_lambda, pressure,
                       solve_lambda)

__version__ = "0.1.0"
