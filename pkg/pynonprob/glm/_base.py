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


"""Common types, exceptions and prediction for GLM fitting.
"""


import collections

import numpy as np
from scipy import special

from pynonprob import common
from pynonprob import util


class SeparationException(common.NonProbException):
    """Fitted probabilities are pinned to 0/1 and coefficients diverge."""


class SingularDesignException(common.NonProbException):
    """The design matrix is not of full column rank."""


class UnderdeterminedException(common.NonProbException):
    """There are not more rows than columns."""


class ChainDegenerateException(common.NonProbException):
    """A Metropolis chain accepted almost no proposals."""

    def __init__(self, name, acceptance_rate=None):
        super(ChainDegenerateException, self).__init__(name)
        self.acceptance_rate = acceptance_rate


GlmFit = collections.namedtuple(
    'GlmFit', ['family', 'coefficients', 'dispersion', 'vcov', 'converged',
               'iterations', 'log_likelihood', 'parameter_vcov'])
GlmFit.__doc__ = """Result of a maximum likelihood (or least squares) fit.

coefficients are beta for Logistic, theta for Linear and gamma for Beta;
dispersion is sigma (Linear), phi (Beta) or None. vcov is the coefficient
covariance; parameter_vcov covers the sampler parameterization, i.e. the
coefficients followed by the log dispersion when the family has one.
"""


PosteriorDraws = collections.namedtuple(
    'PosteriorDraws', ['family', 'draws', 'n_coefficients', 'burn_in',
                       'thinning', 'acceptance_rate'])
PosteriorDraws.__doc__ = """Posterior parameter draws, one row per draw.

The first n_coefficients columns hold coefficients; a final column holds the
dispersion (sigma or phi, not its log) for families that have one.
"""


class Family(object):
    """Bundles the likelihood pieces of one GLM family."""

    def __init__(self, name, has_dispersion, log_likelihood, score, fit):
        self.name = name
        self.has_dispersion = has_dispersion
        self.log_likelihood = log_likelihood
        self.score = score
        self.fit = fit

    def n_parameters(self, n_columns):
        return n_columns + (1 if self.has_dispersion else 0)


def inverse_link(family, eta):
    if family == common.FAMILY_LINEAR:
        return eta
    if family in (common.FAMILY_LOGISTIC, common.FAMILY_BETA):
        return special.expit(eta)
    raise ValueError('unknown family %r' % family)


def n_draws(draws):
    return draws.draws.shape[0]


def check_full_rank(X):
    """Raises SingularDesignException unless X has full column rank."""

    if X.shape[1] == 0:
        raise SingularDesignException('design has no columns')
    rank = np.linalg.matrix_rank(X)
    if rank < X.shape[1]:
        raise SingularDesignException(
            'design rank %d < %d columns' % (rank, X.shape[1]))


def check_weights(weights, n):
    if weights is None:
        return np.ones(n)
    weights = util.as_vector(weights, 'weights')
    if len(weights) != n:
        raise common.LengthMismatchException(
            'weights', expected=n, actual=len(weights))
    if np.any(weights <= 0.0) or not np.all(np.isfinite(weights)):
        raise ValueError('weights must be positive and finite')
    return weights


def rounding_bound(magnitudes):
    """Rounding error bound of sums whose terms have the given summed
    absolute magnitudes."""

    return (common.ROUNDING_SAFETY_FACTOR * np.finfo(float).eps *
            np.asarray(magnitudes, dtype=float))


def score_ratio(gradient, resolution, tol):
    """max_j |g_j| / max(tol, resolution_j). At most 1 means converged.

    tol binds every component whose score sum can represent it; resolution_j
    replaces it where the rounding bound of component j is larger.
    """

    return float(np.max(np.abs(gradient) / np.maximum(tol, resolution)))


def ascend(log_likelihood, ratio, params, step, ll, ll_noise):
    """Halving line search along step.

    A candidate is taken when it raises the log-likelihood, or when it stays
    within ll_noise of it and lowers ratio: close to the maximum the
    likelihood no longer resolves the gain of a Newton step.

    Args:
        log_likelihood: params -> log-likelihood.
        ratio: params -> score_ratio at params.
        params: current iterate.
        step: full Newton (or scoring) step.
        ll: log-likelihood at params.
        ll_noise: rounding bound of ll.

    Returns:
        (candidate, candidate_ll, halvings), or None when no halving of step
        is taken.
    """

    current_ratio = None
    for halvings in range(common.DEFAULT_MAX_HALVINGS + 1):
        candidate = params + step
        candidate_ll = log_likelihood(candidate)
        if candidate_ll > ll:
            return candidate, candidate_ll, halvings
        if candidate_ll >= ll - ll_noise:
            if current_ratio is None:
                current_ratio = ratio(params)
            if ratio(candidate) < current_ratio:
                return candidate, candidate_ll, halvings
        step = step / 2.0
    return None


def symmetrize(matrix):
    return 0.5 * (matrix + matrix.T)


def predict(fit_or_draws, X_new, scale=common.SCALE_MEAN):
    """Predicts from a fit (vector) or from posterior draws (M x n matrix).

    Args:
        fit_or_draws: GlmFit or PosteriorDraws.
        X_new: design matrix with the fitted column count.
        scale: common.SCALE_LINEAR_PREDICTOR or common.SCALE_MEAN.

    Raises:
        DimensionMismatchException: when X_new has the wrong width.
    """

    X_new = util.as_matrix(X_new, 'X_new')
    if isinstance(fit_or_draws, PosteriorDraws):
        p = fit_or_draws.n_coefficients
        coefficients = fit_or_draws.draws[:, :p]
    elif isinstance(fit_or_draws, GlmFit):
        coefficients = np.asarray(fit_or_draws.coefficients)
        p = len(coefficients)
    else:
        raise TypeError('cannot predict from %r' % type(fit_or_draws))
    if X_new.shape[1] != p:
        raise common.DimensionMismatchException(
            'X_new has %d columns, fit has %d' % (X_new.shape[1], p),
            expected=p, actual=X_new.shape[1])

    if coefficients.ndim == 1:
        eta = X_new.dot(coefficients)
    else:
        eta = coefficients.dot(X_new.T)
    if scale == common.SCALE_LINEAR_PREDICTOR:
        return eta
    if scale == common.SCALE_MEAN:
        return inverse_link(fit_or_draws.family, eta)
    raise ValueError('unknown scale %r' % scale)


# vi:sts=4 sw=4 et
