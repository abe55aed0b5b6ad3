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


"""Mocks for testing.
"""


import numpy as np

from pynonprob import common
from pynonprob import sample as sample_module
from pynonprob import simulation


class ConstantPredictor(object):
    """Oracle outcome or propensity model predicting one constant.

    This enables tests to check how many times (and on how many rows) a
    model was evaluated.
    """

    def __init__(self, value):
        self._value = float(value)
        self.calls = []

    def __call__(self, X):
        X = np.asarray(X)
        self.calls.append(X.shape[0])
        return np.full(X.shape[0], self._value)


class TablePredictor(object):
    """Oracle returning preset values; checks it is asked for as many rows
    as it holds."""

    def __init__(self, values):
        self._values = np.asarray(values, dtype=float)

    def __call__(self, X):
        if np.asarray(X).shape[0] != len(self._values):
            raise AssertionError('asked for %d rows, holds %d' %
                                 (np.asarray(X).shape[0],
                                  len(self._values)))
        return self._values


class RecordingEstimator(object):
    """Bootstrap estimator returning the unweighted S_B mean and recording
    the replicate sizes it was given."""

    def __init__(self, fail_on=()):
        self.sizes = []
        self._calls = 0
        self._fail_on = set(fail_on)

    def __call__(self, replicate):
        call = self._calls
        self._calls += 1
        if call in self._fail_on:
            raise ArithmeticError('replicate %d made to fail' % call)
        self.sizes.append((replicate.n_r, replicate.n_b))
        return float(np.mean(replicate.y_b))


def make_sample(reference, nonprob, population_size=None,
                outcome_kind=common.OUTCOME_CONTINUOUS):
    """Builds a CombinedSample from plain tuples.

    Args:
        reference: sequence of (x, pi_r) or (x, pi_r, cluster).
        nonprob: sequence of (x, y), (x, y, pi_r) or (x, y, pi_r, cluster).
    """

    reference_rows = []
    for i, row in enumerate(reference):
        x, pi_r = row[0], row[1]
        cluster = row[2] if len(row) > 2 else None
        reference_rows.append(sample_module.UnitRecord(
            'R%d' % i, np.atleast_1d(x), common.Z_REFERENCE, pi_r=pi_r,
            cluster_id=cluster))
    nonprob_rows = []
    for i, row in enumerate(nonprob):
        x, y = row[0], row[1]
        pi_r = row[2] if len(row) > 2 else None
        cluster = row[3] if len(row) > 3 else None
        nonprob_rows.append(sample_module.UnitRecord(
            'B%d' % i, np.atleast_1d(x), common.Z_NONPROB, y=y, pi_r=pi_r,
            cluster_id=cluster))
    return sample_module.build_combined(
        reference_rows, nonprob_rows, population_size=population_size,
        outcome_kind=outcome_kind)


def aipw_toy_sample():
    """Two S_R units with pi_r 0.5 and two S_B units with y 1 and 3; N=8.

    Records are ordered R0, R1, B0, B1.
    """

    return make_sample([(0.0, 0.5), (1.0, 0.5)],
                       [(0.0, 1.0, 0.5), (1.0, 3.0, 0.5)],
                       population_size=8)


def sim1_sample(seed=0, N=20000, n_r=400, n_b=1000, rho=0.5):
    """A sim1 population and one draw of its samples.

    Returns:
        (CombinedSample, PopulationTruth, realized S_R outcomes).
    """

    population = simulation.gen_sim1(N, rho, seed, n_r=n_r, n_b=n_b)
    s_r, s_b = simulation.draw_samples(population, seed)
    combined, y_r = simulation.to_combined(population, s_r, s_b)
    return combined, population, y_r


# vi:sts=4 sw=4 et
