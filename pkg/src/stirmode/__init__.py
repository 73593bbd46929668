"""Exact Stirling numbers of the second kind and bounds on the location of their maximum."""

from .dobinski import DobinskiMode, corollary_bounds, dobinski_mode, dobinski_sum_check, ratio_sign
from .errors import (ContractError, DomainError, PrecisionCapError, SizeLimitError, StirmodeError,
                     TheoremViolation)
from .lambertw import CertifiedInt, floor_exp_w, lambert_w
from .poisson_binomial import (BernoulliVector, RationalPMF, ShiftedModeReport, conjecture_search,
                               darroch_check, modes_of, newton_coefficient_check, pb_mean, pb_pmf,
                               poisson1_shift_weights, prop1_check, section3_identity_check,
                               shifted_mode)
from .stirling import (ModeLocation, StirlingRow, bell_number, check_newton_row, locate_mode,
                       stirling, stirling_row)
from .verifier import CheckReport, verify_implications, verify_n, verify_range

__version__ = "0.1.0"
