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


"""Types and exceptions of the sum-of-trees engine.
"""


import collections

from pynonprob import common


KIND_CONTINUOUS = 'continuous'
KIND_PROBIT = 'probit'
KIND_LOGIT_TARGET = 'logit_target'
KINDS = (KIND_CONTINUOUS, KIND_PROBIT, KIND_LOGIT_TARGET)

DEFAULT_TREES_CONTINUOUS = 200
DEFAULT_TREES_PROBIT = 50


class ConfigInvalidException(common.NonProbException):
    """A BartConfig field is out of range."""


class SingleClassException(common.NonProbException):
    """Binary responses contain only one class."""


_BartConfigBase = collections.namedtuple(
    '_BartConfigBase', ['m', 'nu', 'q', 'lambda_', 'k', 'alpha', 'beta_depth',
                        'n_draws', 'burn_in', 'thinning', 'seed'])


class BartConfig(_BartConfigBase):
    """Sampler settings.

    lambda_ None means calibrated so that P(sigma < sigma_hat) = q under the
    prior, with sigma_hat the least squares residual SD.
    """

    __slots__ = ()

    def __new__(cls, m=DEFAULT_TREES_CONTINUOUS, nu=3.0, q=0.9, lambda_=None,
                k=2.0, alpha=0.95, beta_depth=2.0,
                n_draws=common.DEFAULT_KEPT_DRAWS,
                burn_in=common.DEFAULT_BURN_IN, thinning=1, seed=0):
        if int(m) < 1:
            raise ConfigInvalidException('m must be at least 1, got %r' % m)
        if not 0.0 < alpha < 1.0:
            raise ConfigInvalidException('alpha must lie in (0, 1)')
        if not 0.0 < q < 1.0:
            raise ConfigInvalidException('q must lie in (0, 1)')
        for name, value in (('nu', nu), ('k', k), ('beta_depth', beta_depth)):
            if not value > 0:
                raise ConfigInvalidException('%s must be positive' % name)
        if lambda_ is not None and not lambda_ > 0:
            raise ConfigInvalidException('lambda must be positive')
        if int(n_draws) < 1 or int(burn_in) < 0 or int(thinning) < 1:
            raise ConfigInvalidException('invalid draw counts')
        return super(BartConfig, cls).__new__(
            cls, int(m), float(nu), float(q), lambda_, float(k),
            float(alpha), float(beta_depth), int(n_draws), int(burn_in),
            int(thinning), seed)


SumOfTreesState = collections.namedtuple(
    'SumOfTreesState', ['trees', 'sigma', 'iteration'])
SumOfTreesState.__doc__ = """Ensemble at one kept iteration.

trees is a tuple of m FlatTree on the internal response scale; sigma is on
the original response scale (None for probit).
"""


BartFit = collections.namedtuple(
    'BartFit', ['kind', 'states', 'shift', 'scale', 'offset', 'n_features'])
BartFit.__doc__ = """Kept states plus the response transformation.

For continuous and logit-target kinds the linear predictor is
shift + scale * sum of leaves; for probit it is offset + sum of leaves.
"""


# vi:sts=4 sw=4 et
