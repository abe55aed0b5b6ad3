# Copyright 2026, The pynonprob Authors.
# All rights reserved.
#
# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions are
# met:
#
#     * Redistributions of source code must retain the above copyright
# notice, this list of conditions and the following disclaimer.
#     * Redistributions in binary form must reproduce the above
# copyright notice, this list of conditions and the following disclaimer
# in the documentation and/or other materials provided with the
# distribution.
#     * Neither the name of the pynonprob Authors nor the names of its
# contributors may be used to endorse or promote products derived from
# this software without specific prior written permission.
#
# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS
# "AS IS" AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT
# LIMITED TO, THE IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR
# A PARTICULAR PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT
# OWNER OR CONTRIBUTORS BE LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL,
# SPECIAL, EXEMPLARY, OR CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT
# LIMITED TO, PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES; LOSS OF USE,
# DATA, OR PROFITS; OR BUSINESS INTERRUPTION) HOWEVER CAUSED AND ON ANY
# THEORY OF LIABILITY, WHETHER IN CONTRACT, STRICT LIABILITY, OR TORT
# (INCLUDING NEGLIGENCE OR OTHERWISE) ARISING IN ANY WAY OUT OF THE USE
# OF THIS SOFTWARE, EVEN IF ADVISED OF THE POSSIBILITY OF SUCH DAMAGE.


"""This file must not depend on any module specific to a single estimator.

Constants and exceptions shared by every pynonprob module.
"""


# Custom log level used for per-iteration traces (IRLS steps, MCMC sweeps,
# bootstrap replicates). Registered as 'FINE' by the standalone command.
LOGLEVEL_FINE = 9

# Membership indicator values.
Z_NONPROB = 1
Z_REFERENCE = 0

# Outcome kinds (sample-level attribute chosen by the caller).
OUTCOME_CONTINUOUS = 'continuous'
OUTCOME_BINARY = 'binary'
OUTCOME_KINDS = (OUTCOME_CONTINUOUS, OUTCOME_BINARY)

# Covariate selections for design matrices.
COVARIATES_X = 'X'
COVARIATES_D = 'D'
COVARIATES_XSTAR = 'XStar'

# Prediction scales.
SCALE_LINEAR_PREDICTOR = 'LinearPredictor'
SCALE_MEAN = 'Mean'
SCALE_LOGIT = 'Logit'

# GLM families.
FAMILY_LOGISTIC = 'Logistic'
FAMILY_LINEAR = 'Linear'
FAMILY_BETA = 'Beta'

# Pseudo-inclusion methods.
QR_IPSW = 'IPSW'
QR_PAPW = 'PAPW'
QR_PAPP = 'PAPP'

# AIPW normalizations.
NORMALIZATION_KNOWN_N = 'KnownN'
NORMALIZATION_HAJEK = 'Hajek'

# Bayesian AIPW routes.
ROUTE_PAPW = 'PAPW_known_pir'
ROUTE_PAPP = 'PAPP_unknown_pir'

# Numerical defaults.
DEFAULT_POSITIVITY_FLOOR = 1e-4
DEFAULT_MAX_ITERATIONS = 100
DEFAULT_SCORE_TOLERANCE = 1e-8
DEFAULT_MAX_HALVINGS = 20
SEPARATION_PROBABILITY_EPS = 1e-10
SEPARATION_COEFFICIENT_NORM = 1e3
# Multiple of machine epsilon times the summed term magnitudes that bounds
# the rounding error of a score or log-likelihood sum.
ROUNDING_SAFETY_FACTOR = 16.0
# z_{0.975}
Z_975 = 1.959964
# Acceptance rate below which a Metropolis chain is declared degenerate.
MIN_ACCEPTANCE_RATE = 0.01
# Proposal covariance multiplier, divided by the parameter dimension.
METROPOLIS_SCALE = 2.38
# Fraction of failed bootstrap replicates tolerated before aborting.
BOOTSTRAP_MAX_FAILURE_FRACTION = 0.05
# Fraction of failed replications tolerated before a harness cell aborts.
HARNESS_MAX_FAILURE_FRACTION = 0.10
# Clip applied to simulated linear inclusion probabilities.
PROBABILITY_CLIP = 1e-8

# Default MCMC settings: 1000 burn-in, 1000 kept, M=200 used.
DEFAULT_BURN_IN = 1000
DEFAULT_KEPT_DRAWS = 1000
DEFAULT_M = 200
DEFAULT_BOOTSTRAP_B = 200

# Command line exit status.
EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_PARTIAL_FAILURE = 2

# Output schema versions.
REPORT_SCHEMA_VERSION = 1
DUMP_FORMAT_VERSION = 1


class NonProbException(Exception):
    """Base of every exception raised by pynonprob."""


class LengthMismatchException(NonProbException):
    """Vectors that must align have different lengths."""

    def __init__(self, name, expected=None, actual=None):
        super(LengthMismatchException, self).__init__(name)
        self.expected = expected
        self.actual = actual


class DimensionMismatchException(NonProbException):
    """Matrix column counts do not match the fitted model."""

    def __init__(self, name, expected=None, actual=None):
        super(DimensionMismatchException, self).__init__(name)
        self.expected = expected
        self.actual = actual


class ResponseOutOfRangeException(NonProbException):
    """A response that must lie in (0, 1) does not."""


class NoConvergenceException(NonProbException):
    """An iterative solver stopped before reaching its tolerance."""

    def __init__(self, name, iterations=None, residual_norm=None):
        super(NoConvergenceException, self).__init__(name)
        self.iterations = iterations
        self.residual_norm = residual_norm


# vi:sts=4 sw=4 et
