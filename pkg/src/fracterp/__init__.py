"""Fractional powers of operators by interpolating their integer powers."""

__version__ = "0.1.0"

from .errors import (BranchAmbiguous, CertificateRefused, DegenerateAngle, DomainError,
                     FactorZero, FracterpError, GammaPole, GridMismatch, IllConditioned,
                     NotConverged, NotConvergedWarning, ParseError, PoleError)
from .interp_core import (NewtonCoefficients, PeriodicWeights, SeriesResult, TruncationPolicy,
                          newton_coefficients, newton_eval, newton_eval_power, periodic_kernel,
                          periodic_power_weights, pochhammer_newton, shannon_eval_power, sinc)
from .operator_powers import (SpectralCertificate, best_tangent_disk, certify_spectrum,
                              eigen_fractional_power_oracle, newton_matrix_power,
                              periodic_matrix_power, shannon_matrix_power)
from .frac_calculus import (SampledSignal, frac_derivative_fourier_series,
                            frac_derivative_fourier_transform, frac_derivative_trig,
                            newton_fractional_integral, riemann_liouville)
from .dirichlet_interp import (DirichletSamples, dirichlet_newton_interpolate, eta_integer_values,
                               mellin_interpolate, reciprocal_zeta, zeta_direct, zeta_shifted,
                               zeta_via_eta)
from .frfrt import (FrftWeights, Signal, alt_frft, alt_frft_weights, literature_frft,
                    minus_one_projector, refined_translation_power, translation_counterexample)
