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


"""Linear regression by weighted least squares.
"""


import numpy as np
from scipy import linalg

from pynonprob import common
from pynonprob import util
from pynonprob.glm import _base


_LOG_2PI = np.log(2.0 * np.pi)
_EXACT_FIT_TOLERANCE = 1e-12


def log_likelihood(X, y, params, weights=None):
    """Gaussian log-likelihood; params are theta followed by log sigma."""

    weights = _base.check_weights(weights, len(y))
    theta, log_sigma = params[:-1], params[-1]
    residual = y - X.dot(theta)
    return float(np.sum(weights * (
        -0.5 * _LOG_2PI - log_sigma -
        0.5 * residual ** 2 * np.exp(-2.0 * log_sigma))))


def score(X, y, params, weights=None):
    weights = _base.check_weights(weights, len(y))
    theta, log_sigma = params[:-1], params[-1]
    residual = y - X.dot(theta)
    inverse_variance = np.exp(-2.0 * log_sigma)
    d_theta = X.T.dot(weights * residual) * inverse_variance
    d_log_sigma = np.sum(weights * (residual ** 2 * inverse_variance - 1.0))
    return np.append(d_theta, d_log_sigma)


def fit_linear(X, y, weights=None):
    """Fits theta by (weighted) least squares.

    sigma^2 is estimated by RSS/(n-p); vcov = sigma^2 (X'WX)^-1. A perfect fit
    gives dispersion 0.

    Raises:
        UnderdeterminedException: when rows(X) <= cols(X).
        SingularDesignException: when X is rank deficient.
    """

    X = util.as_matrix(X, 'X')
    y = util.as_vector(y, 'y')
    n, p = X.shape
    if len(y) != n:
        raise common.LengthMismatchException('y', expected=n, actual=len(y))
    weights = _base.check_weights(weights, n)
    if n <= p:
        raise _base.UnderdeterminedException(
            '%d rows for %d columns' % (n, p))
    _base.check_full_rank(X)

    root_weights = np.sqrt(weights)
    theta = linalg.lstsq(X * root_weights[:, np.newaxis],
                         y * root_weights)[0]
    residual = y - X.dot(theta)
    rss = float(np.sum(weights * residual ** 2))
    # Rounding residue of an exact fit counts as a perfect fit.
    if rss <= (_EXACT_FIT_TOLERANCE * max(np.linalg.norm(y), 1.0)) ** 2:
        rss = 0.0
    sigma2 = rss / (n - p)
    xtwx = X.T.dot(X * weights[:, np.newaxis])
    xtwx_inverse = _base.symmetrize(linalg.inv(xtwx))
    vcov = sigma2 * xtwx_inverse

    ml_sigma2 = rss / float(weights.sum())
    if ml_sigma2 > 0.0:
        ll = log_likelihood(X, y, np.append(theta, 0.5 * np.log(ml_sigma2)),
                            weights)
    else:
        ll = np.inf
    parameter_vcov = linalg.block_diag(vcov, 1.0 / (2.0 * (n - p)))
    return _base.GlmFit(common.FAMILY_LINEAR, theta, float(np.sqrt(sigma2)),
                        vcov, True, 1, ll, parameter_vcov)


FAMILY = _base.Family(common.FAMILY_LINEAR, True, log_likelihood, score,
                      fit_linear)


# vi:sts=4 sw=4 et
