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


"""Beta regression under the mean/precision parameterization.

A response y in (0, 1) follows Beta(mu * phi, (1 - mu) * phi) with
mu = logistic(gamma' x). The fit works on (gamma, log phi) and maximizes the
likelihood by Fisher scoring with a halving line search.
"""


import logging

import numpy as np
from scipy import linalg
from scipy import special

from pynonprob import common
from pynonprob import util
from pynonprob.glm import _base


_LOGGER = logging.getLogger(__name__)


def _split(params):
    gamma = params[:-1]
    phi = np.exp(params[-1])
    return gamma, phi


def log_likelihood(X, y, params, weights=None):
    weights = _base.check_weights(weights, len(y))
    gamma, phi = _split(params)
    mu = special.expit(X.dot(gamma))
    a = mu * phi
    b = (1.0 - mu) * phi
    terms = (special.gammaln(phi) - special.gammaln(a) - special.gammaln(b) +
             (a - 1.0) * np.log(y) + (b - 1.0) * np.log1p(-y))
    return float(np.sum(weights * terms))


def score(X, y, params, weights=None):
    weights = _base.check_weights(weights, len(y))
    gamma, phi = _split(params)
    mu = special.expit(X.dot(gamma))
    a = mu * phi
    b = (1.0 - mu) * phi
    y_star = np.log(y) - np.log1p(-y)
    mu_star = special.digamma(a) - special.digamma(b)
    d_gamma = X.T.dot(weights * phi * (y_star - mu_star) * mu * (1.0 - mu))
    d_log_phi = phi * np.sum(weights * (
        mu * (y_star - mu_star) + np.log1p(-y) - special.digamma(b) +
        special.digamma(phi)))
    return np.append(d_gamma, d_log_phi)


def _magnitudes(X, y, params):
    gamma, phi = _split(params)
    mu = special.expit(X.dot(gamma))
    a = mu * phi
    b = (1.0 - mu) * phi
    log_y = np.abs(np.log(y))
    log_1my = np.abs(np.log1p(-y))
    digamma_a = np.abs(special.digamma(a))
    digamma_b = np.abs(special.digamma(b))
    return gamma, phi, mu, a, b, log_y, log_1my, digamma_a, digamma_b


def score_resolution(X, y, params, weights=None):
    """Rounding bound of every score component at params.

    The log phi component sums phi-scaled differences of digammas of large
    arguments, so for a large precision its bound exceeds any fixed
    tolerance.
    """

    weights = _base.check_weights(weights, len(y))
    (_, phi, mu, _, _, log_y, log_1my, digamma_a,
     digamma_b) = _magnitudes(X, y, params)
    pieces = log_y + log_1my + digamma_a + digamma_b
    d_gamma = np.abs(X).T.dot(weights * phi * pieces * mu * (1.0 - mu))
    d_log_phi = phi * np.sum(weights * (
        mu * pieces + log_1my + digamma_b +
        np.abs(special.digamma(phi))))
    return _base.rounding_bound(np.append(d_gamma, d_log_phi))


def _log_likelihood_noise(X, y, params, weights):
    _, phi, _, a, b, log_y, log_1my, _, _ = _magnitudes(X, y, params)
    return float(_base.rounding_bound(np.sum(weights * (
        np.abs(special.gammaln(phi)) + np.abs(special.gammaln(a)) +
        np.abs(special.gammaln(b)) + np.abs(a - 1.0) * log_y +
        np.abs(b - 1.0) * log_1my))))


def expected_information(X, params, weights=None):
    """Fisher information in the (gamma, log phi) parameterization."""

    weights = _base.check_weights(weights, X.shape[0])
    gamma, phi = _split(params)
    mu = special.expit(X.dot(gamma))
    a = mu * phi
    b = (1.0 - mu) * phi
    trigamma_a = special.polygamma(1, a)
    trigamma_b = special.polygamma(1, b)
    slope = mu * (1.0 - mu)

    k_gg = X.T.dot(X * (weights * phi ** 2 * (trigamma_a + trigamma_b) *
                        slope ** 2)[:, np.newaxis])
    c = phi * (trigamma_a * mu - trigamma_b * (1.0 - mu))
    k_gp = X.T.dot(weights * slope * c) * phi
    k_pp = phi ** 2 * np.sum(weights * (
        trigamma_a * mu ** 2 + trigamma_b * (1.0 - mu) ** 2 -
        special.polygamma(1, phi)))

    p = X.shape[1]
    information = np.empty((p + 1, p + 1))
    information[:p, :p] = k_gg
    information[:p, p] = k_gp
    information[p, :p] = k_gp
    information[p, p] = k_pp
    return information


def _check_response(y):
    if np.any(~np.isfinite(y)) or np.any((y <= 0.0) | (y >= 1.0)):
        bad = int(np.flatnonzero(~((y > 0.0) & (y < 1.0)))[0])
        raise common.ResponseOutOfRangeException(
            'beta regression response %r at position %d is outside (0, 1)' %
            (y[bad], bad))


def _starting_values(X, y):
    gamma = linalg.lstsq(X, special.logit(y))[0]
    mu = special.expit(X.dot(gamma))
    dof = max(len(y) - X.shape[1], 1)
    variance = np.sum((y - mu) ** 2) / dof
    if variance > 0.0:
        phi = max(np.mean(mu * (1.0 - mu)) / variance - 1.0, 1.0)
    else:
        phi = 1e3
    return np.append(gamma, np.log(phi))


def fit_beta_regression(X, y, weights=None,
                        max_iterations=common.DEFAULT_MAX_ITERATIONS,
                        tol=common.DEFAULT_SCORE_TOLERANCE):
    """Fits (gamma, phi) by maximum likelihood.

    Fisher scoring stops once every score component is within
    max(tol, score_resolution). Close to the maximum a scoring step is kept
    when it lowers the score without a resolvable loss of likelihood.

    Args:
        X: n x p design matrix.
        y: responses strictly inside (0, 1).
        weights: optional positive weights.

    Raises:
        ResponseOutOfRangeException: when a response is outside (0, 1).
        SingularDesignException: when X is rank deficient.
        NoConvergenceException: when max_iterations is reached or no
                                scoring step is accepted.
    """

    X = util.as_matrix(X, 'X')
    y = util.as_vector(y, 'y')
    if len(y) != X.shape[0]:
        raise common.LengthMismatchException(
            'y', expected=X.shape[0], actual=len(y))
    _check_response(y)
    weights = _base.check_weights(weights, len(y))
    _base.check_full_rank(X)

    def objective(params):
        return log_likelihood(X, y, params, weights)

    def ratio(params):
        return _base.score_ratio(score(X, y, params, weights),
                                 score_resolution(X, y, params, weights),
                                 tol)

    params = _starting_values(X, y)
    ll = objective(params)
    converged = False
    stalled = False
    iteration = 0
    while iteration < max_iterations:
        if ratio(params) <= 1.0:
            converged = True
            break
        iteration += 1
        gradient = score(X, y, params, weights)
        information = expected_information(X, params, weights)
        try:
            step = linalg.solve(information, gradient, assume_a='pos')
        except (linalg.LinAlgError, ValueError):
            step = linalg.lstsq(information, gradient)[0]

        taken = _base.ascend(objective, ratio, params, step, ll,
                             _log_likelihood_noise(X, y, params, weights))
        if taken is None:
            stalled = True
            break
        params, ll, halvings = taken
        _LOGGER.log(common.LOGLEVEL_FINE,
                    'Beta regression iteration %d: loglik=%.10g '
                    'halvings=%d phi=%.6g', iteration, ll, halvings,
                    np.exp(params[-1]))

    if not converged:
        if stalled:
            raise common.NoConvergenceException(
                'beta regression stalled at iteration %d with score %g '
                'times its tolerance' % (iteration, ratio(params)),
                iterations=iteration)
        raise common.NoConvergenceException(
            'beta regression did not converge in %d iterations' %
            max_iterations, iterations=iteration)

    parameter_vcov = _base.symmetrize(
        linalg.inv(expected_information(X, params, weights)))
    p = X.shape[1]
    gamma, phi = _split(params)
    return _base.GlmFit(common.FAMILY_BETA, gamma, float(phi),
                        parameter_vcov[:p, :p], True, iteration, ll,
                        parameter_vcov)


FAMILY = _base.Family(common.FAMILY_BETA, True, log_likelihood, score,
                      fit_beta_regression)


# vi:sts=4 sw=4 et
