#!/usr/bin/env python
#
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


"""Long-running checks of the simulation tables.

Skipped unless PYNONPROB_SLOW=1 is set in the environment.
"""


import os
import unittest

import set_sys_path  # Update sys.path to locate pynonprob module.

from pynonprob import dispatch
from pynonprob import harness
from pynonprob import simulation


_SLOW = os.environ.get('PYNONPROB_SLOW') == '1'


@unittest.skipUnless(_SLOW, 'set PYNONPROB_SLOW=1 to run')
class Sim1FrequentistGridTest(unittest.TestCase):
    """A unittest for the sim1 frequentist table at rho 0.5."""

    @classmethod
    def setUpClass(cls):
        config = harness.ScenarioConfig(
            scenario=simulation.SIM1, rho=0.5, n_r=100, n_b=1000,
            methods=['UNWEIGHTED-SB', 'PAPW', 'IPSW', 'PM', 'AIPW-PAPW'],
            specs=['TT', 'FF'])
        result = harness.run_replications(config, 500, seed=20261018,
                                          jobs=4)
        cls.rows = dict(((row.method, row.spec), row) for row in result.rows)

    def _rbias(self, method, spec):
        return self.rows[(method, spec)].rbias_pct

    def test_unweighted_bias(self):
        self.assertTrue(abs(self._rbias('UNWEIGHTED-SB', '--') - 31.9) <=
                        1.5)

    def test_quasi_randomization_bias(self):
        self.assertTrue(abs(self._rbias('PAPW', 'T-') + 1.9) <= 1.0)
        self.assertTrue(abs(self._rbias('IPSW', 'T-') + 3.1) <= 1.0)

    def test_prediction_bias(self):
        self.assertTrue(abs(self._rbias('PM', '-T') - 0.2) <= 0.8)

    def test_aipw_correct_models(self):
        row = self.rows[('AIPW-PAPW', 'TT')]
        self.assertTrue(abs(row.rbias_pct) <= 0.8)
        self.assertTrue(92.0 <= row.crci_pct <= 97.5)

    def test_aipw_both_models_wrong(self):
        self.assertTrue(abs(self._rbias('AIPW-PAPW', 'FF') - 28.4) <= 2.0)


@unittest.skipUnless(_SLOW, 'set PYNONPROB_SLOW=1 to run')
class Sim1BayesGridTest(unittest.TestCase):
    """A unittest for the sim1 two-step Bayesian table at rho 0.5."""

    @classmethod
    def setUpClass(cls):
        config = harness.ScenarioConfig(
            scenario=simulation.SIM1, rho=0.5, n_r=100, n_b=1000,
            approach=dispatch.APPROACH_BAYES, methods=['PAPP', 'AIPW-PAPW'],
            specs=['TT'], M=200)
        result = harness.run_replications(config, 200, seed=20261018,
                                          jobs=4)
        cls.rows = dict(((row.method, row.spec), row) for row in result.rows)

    def test_papp_bias(self):
        self.assertTrue(abs(self.rows[('PAPP', 'T-')].rbias_pct - 0.1) <=
                        1.0)

    def test_aipw_correct_models(self):
        row = self.rows[('AIPW-PAPW', 'TT')]
        self.assertTrue(abs(row.rbias_pct) <= 1.0)
        self.assertTrue(row.crci_pct >= 94.0)


@unittest.skipUnless(_SLOW, 'set PYNONPROB_SLOW=1 to run')
class Sim2Test(unittest.TestCase):
    """A unittest for the nonlinear scenario at rho 0.2 with both working
    models misspecified."""

    def _row(self, fk, approach, method):
        config = harness.ScenarioConfig(
            scenario=simulation.SIM2, rho=0.2, fk=fk, n_b=1000,
            approach=approach, methods=[method], specs=['FF'], M=200)
        result = harness.run_replications(config, 100, seed=20261018,
                                          jobs=4)
        row, = result.rows
        return row

    def test_bart_aipw(self):
        for fk in simulation.FK_NAMES:
            row = self._row(fk, dispatch.APPROACH_BART, 'BART-AIPW-PAPP')
            self.assertTrue(abs(row.rbias_pct) <= 1.5, fk)

    def test_glm_aipw_fails_on_square(self):
        row = self._row(simulation.FK_SQR, dispatch.APPROACH_FREQUENTIST,
                        'AIPW-PAPP')
        self.assertTrue(row.rbias_pct >= 40.0)


@unittest.skipUnless(_SLOW, 'set PYNONPROB_SLOW=1 to run')
class Sim3Test(unittest.TestCase):
    """A unittest for the clustered scenario."""

    def test_population_means(self):
        population = simulation.gen_sim3(1000, 1000, 0.8, 20261018)
        self.assertTrue(
            abs(population.true_mean[simulation.OUTCOME_YC] - 3.39) <= 0.05)
        self.assertTrue(
            abs(population.true_mean[simulation.OUTCOME_YB] - 0.40) <= 0.01)

    def test_bootstrap_aipw(self):
        for outcome in (simulation.OUTCOME_YC, simulation.OUTCOME_YB):
            config = harness.ScenarioConfig(
                scenario=simulation.SIM3, rho=0.8, clusters=200,
                cluster_size=1000, approach=harness.APPROACH_BOOTSTRAP,
                methods=['AIPW-PAPP'], specs=['TT'], outcome=outcome, B=200)
            result = harness.run_replications(config, 100, seed=20261018,
                                              jobs=4)
            row, = result.rows
            self.assertTrue(abs(row.rbias_pct) <= 1.5)
            self.assertTrue(91.0 <= row.crci_pct <= 97.0)


if __name__ == '__main__':
    unittest.main()


# vi:sts=4 sw=4 et
