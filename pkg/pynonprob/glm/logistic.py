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


"""Logistic regression by iteratively reweighted least squares.
"""


import logging

import numpy as np
from scipy import linalg
from scipy import special

from pynonprob import common
from pynonprob import util
from pynonprob.glm import _base


_LOGGER = logging.getLogger(__name__)


def log_likelihood(X, t, params, weights=None):
    """(Weighted) Bernoulli log-likelihood at params."""

    weights = _base.check_weights(weights, len(t))
    eta = X.dot(params)
    return float(np.sum(weights * (t * eta - np.logaddexp(0.0, eta))))


def score(X, t, params, weights=None):
    weights = _base.check_weights(weights, len(t))
    mu = special.expit(X.dot(params))
    return X.T.dot(weights * (t - mu))


def score_resolution(X, t, params, weights=None):
    """Rounding bound of every score component at params."""

    weights = _base.check_weights(weights, len(t))
    mu = special.expit(X.dot(params))
    return _base.rounding_bound(np.abs(X).T.dot(weights * (t + mu)))


def _log_likelihood_noise(X, t, params, weights):
    eta = X.dot(params)
    return float(_base.rounding_bound(
        np.sum(weights * (np.abs(t * eta) + np.logaddexp(0.0, eta)))))


def _is_pinned(mu):
    eps = common.SEPARATION_PROBABILITY_EPS
    return bool(np.any((mu < eps) | (mu > 1.0 - eps)))


def fit_logistic(X, t, weights=None,
                 max_iterations=common.DEFAULT_MAX_ITERATIONS,
                 tol=common.DEFAULT_SCORE_TOLERANCE, history=None):
    """Fits a logistic regression by IRLS with step-halving.

    Convergence is declared when max |score| <= tol. A component whose score
    sum cannot resolve tol (score_resolution above tol) is held to its
    rounding bound instead.

    Args:
        X: n x p design matrix.
        t: 0/1 responses.
        weights: optional positive weights.
        max_iterations: IRLS iteration cap.
        tol: tolerance on the score max-norm.
        history: optional list receiving the log-likelihood of every
                 accepted iterate.

    Raises:
        SeparationException: when the responses are (quasi) separated.
        SingularDesignException: when X is rank deficient.
        NoConvergenceException: when max_iterations is reached or no step
                                along the Newton direction is accepted.
    """

    X = util.as_matrix(X, 'X')
    t = util.as_vector(t, 't')
    if len(t) != X.shape[0]:
        raise common.LengthMismatchException(
            't', expected=X.shape[0], actual=len(t))
    if not np.all((t == 0.0) | (t == 1.0)):
        raise ValueError('logistic responses must be 0/1')
    weights = _base.check_weights(weights, len(t))
    if np.all(t == t[0]):
        raise _base.SeparationException(
            'all responses equal %d' % int(t[0]))
    _base.check_full_rank(X)

    def objective(params):
        return log_likelihood(X, t, params, weights)

    def ratio(params):
        return _base.score_ratio(score(X, t, params, weights),
                                 score_resolution(X, t, params, weights),
                                 tol)

    beta = np.zeros(X.shape[1])
    ll = objective(beta)
    if history is not None:
        history.append(ll)

    converged = False
    stalled = False
    iteration = 0
    mu = special.expit(X.dot(beta))
    while iteration < max_iterations:
        mu = special.expit(X.dot(beta))
        gradient = X.T.dot(weights * (t - mu))
        if ratio(beta) <= 1.0:
            converged = True
            break
        iteration += 1
        working = weights * mu * (1.0 - mu)
        information = X.T.dot(X * working[:, np.newaxis])
        try:
            step = linalg.solve(information, gradient, assume_a='pos')
        except (linalg.LinAlgError, ValueError):
            raise _base.SeparationException(
                'information matrix became singular at iteration %d' %
                iteration)

        taken = _base.ascend(objective, ratio, beta, step, ll,
                             _log_likelihood_noise(X, t, beta, weights))
        if taken is None:
            stalled = True
            break
        beta, ll, halvings = taken
        if history is not None:
            history.append(ll)
        _LOGGER.log(common.LOGLEVEL_FINE,
                    'IRLS iteration %d: loglik=%.10g halvings=%d',
                    iteration, ll, halvings)

        mu = special.expit(X.dot(beta))
        if (_is_pinned(mu) and
                np.linalg.norm(beta) > common.SEPARATION_COEFFICIENT_NORM):
            raise _base.SeparationException(
                'fitted probabilities pinned to 0/1 with |beta|=%g' %
                np.linalg.norm(beta))

    if not converged:
        if _is_pinned(mu):
            raise _base.SeparationException(
                'fitted probabilities pinned to 0/1 after %d iterations' %
                iteration)
        if stalled:
            raise common.NoConvergenceException(
                'IRLS stalled at iteration %d with max |score| %g' %
                (iteration, np.max(np.abs(score(X, t, beta, weights)))),
                iterations=iteration)
        raise common.NoConvergenceException(
            'IRLS did not converge in %d iterations' % max_iterations,
            iterations=iteration)
    if np.all(np.abs(t - mu) < 1e-6):
        raise _base.SeparationException(
            'responses are perfectly predicted (complete separation)')

    working = weights * mu * (1.0 - mu)
    information = X.T.dot(X * working[:, np.newaxis])
    vcov = _base.symmetrize(linalg.inv(information))
    return _base.GlmFit(common.FAMILY_LOGISTIC, beta, None, vcov, True,
                        iteration, ll, vcov)


FAMILY = _base.Family(common.FAMILY_LOGISTIC, False, log_likelihood, score,
                      fit_logistic)


# vi:sts=4 sw=4 et
