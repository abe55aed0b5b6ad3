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


"""Random-walk Metropolis sampler for GLM posteriors.

The chain starts at the maximum likelihood estimate and proposes Gaussian
steps with covariance (scale^2 / d) * V, where V is the MLE covariance of the
sampled parameterization (coefficients, then log dispersion).
"""


import collections
import logging

import numpy as np
from scipy import linalg

from pynonprob import common
from pynonprob import util
from pynonprob.glm import _base


_LOGGER = logging.getLogger(__name__)

_PRIOR_FLAT = 'flat'
_PRIOR_WEAK = 'weak'
# Standard deviation of the weak normal prior on every sampled parameter.
_WEAK_PRIOR_SD = 10.0
# Dispersion reported for a zero-residual linear fit.
_MIN_DISPERSION = 1e-10


_McmcConfigBase = collections.namedtuple(
    '_McmcConfigBase', ['n_draws', 'burn_in', 'thinning', 'proposal_scale',
                        'prior', 'seed'])


class McmcConfig(_McmcConfigBase):
    """Settings of one Metropolis chain."""

    __slots__ = ()

    def __new__(cls, n_draws=common.DEFAULT_KEPT_DRAWS,
                burn_in=common.DEFAULT_BURN_IN, thinning=1,
                proposal_scale=common.METROPOLIS_SCALE, prior=_PRIOR_FLAT,
                seed=0):
        if n_draws < 1:
            raise ValueError('n_draws must be at least 1, got %r' % n_draws)
        if burn_in < 0 or thinning < 1 or proposal_scale <= 0:
            raise ValueError('invalid burn_in/thinning/proposal_scale')
        if prior not in (_PRIOR_FLAT, _PRIOR_WEAK):
            raise ValueError('unknown prior %r' % prior)
        return super(McmcConfig, cls).__new__(
            cls, int(n_draws), int(burn_in), int(thinning),
            float(proposal_scale), prior, seed)


def _mode(fit):
    if fit.dispersion is None:
        return np.asarray(fit.coefficients, dtype=float)
    return np.append(fit.coefficients, np.log(fit.dispersion))


def _proposal_factor(covariance):
    """Returns L with L L' = covariance, repairing tiny negative eigenvalues."""

    try:
        return linalg.cholesky(covariance, lower=True)
    except linalg.LinAlgError:
        values, vectors = linalg.eigh(covariance)
        values = np.clip(values, 1e-12 * max(values.max(), 1e-300), None)
        return vectors * np.sqrt(values)


def _point_mass(fit, config):
    coefficients = np.asarray(fit.coefficients, dtype=float)
    row = np.append(coefficients, _MIN_DISPERSION)
    draws = np.tile(row, (config.n_draws, 1))
    return _base.PosteriorDraws(fit.family, draws, len(coefficients),
                                config.burn_in, config.thinning, 1.0)


def run_chain(family, X, response, config, weights=None, fit=None):
    """Runs one chain for a resolved family object.

    Args:
        family: _base.Family.
        X: design matrix.
        response: responses of the family.
        config: McmcConfig.
        weights: optional likelihood weights.
        fit: optional precomputed GlmFit used as chain center.

    Raises:
        ChainDegenerateException: when the acceptance rate is below 0.01.
        Errors of the corresponding maximum likelihood fit.
    """

    X = util.as_matrix(X, 'X')
    response = util.as_vector(response, 'response')
    if fit is None:
        fit = family.fit(X, response, weights)
    if family.has_dispersion and fit.dispersion == 0.0:
        _LOGGER.info('Zero residual dispersion; posterior is a point mass')
        return _point_mass(fit, config)

    current = _mode(fit)
    dimension = len(current)
    covariance = (config.proposal_scale ** 2 / dimension) * np.asarray(
        fit.parameter_vcov, dtype=float)
    factor = _proposal_factor(_base.symmetrize(covariance))

    def log_posterior(params):
        value = family.log_likelihood(X, response, params, weights)
        if config.prior == _PRIOR_WEAK:
            value -= 0.5 * np.sum(params ** 2) / _WEAK_PRIOR_SD ** 2
        if not np.isfinite(value):
            return -np.inf
        return value

    rng = np.random.default_rng(config.seed)
    current_lp = log_posterior(current)
    total = config.burn_in + config.n_draws * config.thinning
    kept = np.empty((config.n_draws, dimension))
    accepted = 0
    slot = 0
    for step in range(total):
        proposal = current + factor.dot(rng.standard_normal(dimension))
        proposal_lp = log_posterior(proposal)
        if np.log(rng.uniform()) < proposal_lp - current_lp:
            current, current_lp = proposal, proposal_lp
            accepted += 1
        after = step - config.burn_in
        if after >= 0 and after % config.thinning == 0:
            kept[slot] = current
            slot += 1

    acceptance_rate = accepted / float(total)
    _LOGGER.debug('%s chain: %d steps, acceptance %.3f', family.name, total,
                  acceptance_rate)
    if acceptance_rate < common.MIN_ACCEPTANCE_RATE:
        raise _base.ChainDegenerateException(
            'acceptance rate %.4f below %g' %
            (acceptance_rate, common.MIN_ACCEPTANCE_RATE),
            acceptance_rate=acceptance_rate)
    if family.has_dispersion:
        kept[:, -1] = np.exp(kept[:, -1])
    return _base.PosteriorDraws(family.name, kept, X.shape[1],
                                config.burn_in, config.thinning,
                                acceptance_rate)


def subsample_draws(draws, M, rng):
    """Keeps M of the chain's draws, chosen without replacement, in order."""

    n = draws.draws.shape[0]
    if M < 1 or M > n:
        raise ValueError('cannot keep %d of %d draws' % (M, n))
    index = np.sort(rng.choice(n, size=M, replace=False))
    return draws._replace(draws=draws.draws[index])


# vi:sts=4 sw=4 et
