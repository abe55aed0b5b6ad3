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


"""Parametric model fitting: logistic, linear and beta regression, plus a
Metropolis posterior sampler for the two-step Bayesian estimators.
"""


from pynonprob.glm import beta
from pynonprob.glm import linear
from pynonprob.glm import logistic
from pynonprob.glm import mcmc
# Export exceptions and types from this module.
from pynonprob.glm._base import ChainDegenerateException
from pynonprob.glm._base import GlmFit
from pynonprob.glm._base import PosteriorDraws
from pynonprob.glm._base import SeparationException
from pynonprob.glm._base import SingularDesignException
from pynonprob.glm._base import UnderdeterminedException
from pynonprob.glm._base import predict
from pynonprob.glm.beta import fit_beta_regression
from pynonprob.glm.linear import fit_linear
from pynonprob.glm.logistic import fit_logistic
from pynonprob.glm.mcmc import McmcConfig
from pynonprob.glm.mcmc import subsample_draws


_FAMILIES = dict((family.name, family) for family in (
    logistic.FAMILY, linear.FAMILY, beta.FAMILY))


def get_family(name):
    try:
        return _FAMILIES[name]
    except KeyError:
        raise ValueError('unknown family %r; expected one of %s' %
                         (name, ', '.join(sorted(_FAMILIES))))


def fit(family, X, response, weights=None):
    return get_family(family).fit(X, response, weights)


def log_likelihood(family, X, response, params, weights=None):
    """Log-likelihood of the named family; see the family modules for the
    parameter layout.
    """

    return get_family(family).log_likelihood(X, response, params, weights)


def score(family, X, response, params, weights=None):
    return get_family(family).score(X, response, params, weights)


def posterior_sample(family, X, response, config, weights=None, fit=None):
    """Draws from the posterior of a GLM by random-walk Metropolis.

    Args:
        family: common.FAMILY_LOGISTIC, FAMILY_LINEAR or FAMILY_BETA.
        X: design matrix.
        response: responses.
        config: McmcConfig.
        weights: optional likelihood weights.
        fit: optional GlmFit to center the chain on.

    Returns:
        PosteriorDraws with config.n_draws rows.
    """

    return mcmc.run_chain(get_family(family), X, response, config,
                          weights=weights, fit=fit)


# vi:sts=4 sw=4 et
