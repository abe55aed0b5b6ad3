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


"""Bayesian additive regression trees.

Continuous BART, probit BART for binary responses, and BART on a logit
transformed probability target. Fits return a BartFit whose states are the
kept SumOfTreesState draws; bart_predict evaluates them.
"""


# Export types, exceptions and entry points from this module.
from pynonprob.bart._base import BartConfig
from pynonprob.bart._base import BartFit
from pynonprob.bart._base import ConfigInvalidException
from pynonprob.bart._base import DEFAULT_TREES_CONTINUOUS
from pynonprob.bart._base import DEFAULT_TREES_PROBIT
from pynonprob.bart._base import KIND_CONTINUOUS
from pynonprob.bart._base import KIND_LOGIT_TARGET
from pynonprob.bart._base import KIND_PROBIT
from pynonprob.bart._base import SingleClassException
from pynonprob.bart._base import SumOfTreesState
from pynonprob.bart.sampler import bart_fit_continuous
from pynonprob.bart.sampler import bart_fit_logit_target
from pynonprob.bart.sampler import bart_fit_probit
from pynonprob.bart.sampler import bart_predict
from pynonprob.bart.tree import FlatTree
from pynonprob.bart.tree import TreeNode


def subsample_states(fit, M, rng):
    """Keeps M of the fit's states, chosen without replacement, in order."""

    n = len(fit.states)
    if M < 1 or M > n:
        raise ValueError('cannot keep %d of %d states' % (M, n))
    index = sorted(rng.choice(n, size=M, replace=False))
    return fit._replace(states=tuple(fit.states[i] for i in index))


# vi:sts=4 sw=4 et
