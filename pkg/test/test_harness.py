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


"""Tests for harness module."""


import io
import json
import unittest

import numpy as np

import set_sys_path  # Update sys.path to locate pynonprob module.

from pynonprob import common
from pynonprob import dispatch
from pynonprob import harness
from pynonprob import simulation


class ComputeMetricsTest(unittest.TestCase):
    """A unittest for compute_metrics."""

    def test_symmetric_errors(self):
        summary = harness.compute_metrics([1.1, 0.9], [0.0, 0.0], 1.0,
                                          'PM', 'TT')
        self.assertAlmostEqual(0.0, summary.rbias_pct)
        self.assertAlmostEqual(10.0, summary.rmse_pct)
        self.assertAlmostEqual(0.0, summary.crci_pct)
        self.assertAlmostEqual(0.0, summary.rse)
        self.assertEqual(2, summary.k_effective)
        self.assertEqual('PM', summary.method)
        self.assertFalse(summary.aborted)

    def test_coverage(self):
        # se 0.1: the first error is inside 1.96 se, the second is not.
        summary = harness.compute_metrics([2.1, 2.3], [0.01, 0.01], 2.0)
        self.assertAlmostEqual(50.0, summary.crci_pct)
        self.assertAlmostEqual(10.0, summary.rbias_pct)

    def test_nan_variance_never_covers(self):
        summary = harness.compute_metrics([1.0, 1.0], [np.nan, -1.0], 1.0)
        self.assertAlmostEqual(0.0, summary.crci_pct)
        self.assertTrue(np.isnan(summary.rse))

    def test_per_replication_truth(self):
        summary = harness.compute_metrics([1.0, 3.0], [1.0, 1.0],
                                          [1.0, 3.0])
        self.assertAlmostEqual(0.0, summary.rmse_pct)
        self.assertAlmostEqual(2.0, summary.truth)

    def test_zero_truth(self):
        self.assertRaises(harness.ZeroTruthException,
                          harness.compute_metrics, [1.0], [1.0], 0.0)

    def test_length_mismatch(self):
        self.assertRaises(common.LengthMismatchException,
                          harness.compute_metrics, [1.0, 2.0], [1.0], 1.0)


class ScenarioConfigTest(unittest.TestCase):
    """A unittest for ScenarioConfig."""

    def _field(self, **kwargs):
        try:
            harness.ScenarioConfig(**kwargs)
        except harness.ConfigException as e:
            return e.field
        self.fail('ConfigException not raised')

    def test_defaults(self):
        config = harness.ScenarioConfig()
        self.assertEqual(simulation.SIM1, config.scenario)
        self.assertEqual(simulation.OUTCOME_Y, config.outcome)
        self.assertEqual(
            harness.DEFAULT_METHODS[dispatch.APPROACH_FREQUENTIST],
            config.methods)
        sim3 = harness.ScenarioConfig(scenario=simulation.SIM3)
        self.assertEqual(simulation.OUTCOME_YC, sim3.outcome)

    def test_invalid_fields(self):
        self.assertEqual('scenario', self._field(scenario='sim9'))
        self.assertEqual('approach', self._field(approach='mle'))
        self.assertEqual('fk', self._field(fk='COS'))
        self.assertEqual('rho', self._field(rho=1.0))
        self.assertEqual('rho', self._field(rho=0.0))
        self.assertEqual('specs', self._field(specs=['TX']))
        self.assertEqual('methods', self._field(methods=['GREG']))
        self.assertEqual('outcome', self._field(outcome='yb'))
        self.assertEqual('M', self._field(M=300, n_kept=200))
        self.assertEqual('B', self._field(B=0))

    def test_sim2_accepts_zero_rho(self):
        config = harness.ScenarioConfig(scenario=simulation.SIM2, rho=0.0)
        self.assertEqual(0.0, config.rho)

    def test_methods_are_normalized(self):
        config = harness.ScenarioConfig(methods=['aipw-papw', 'pm'],
                                        specs=['tf'])
        self.assertEqual(('AIPW-PAPW', 'PM'), config.methods)
        self.assertEqual(('TF',), config.specs)

    def test_bootstrap_options(self):
        config = harness.ScenarioConfig(approach=harness.APPROACH_BOOTSTRAP,
                                        B=30)
        options = config.estimate_options(5, None)
        self.assertEqual(dispatch.APPROACH_FREQUENTIST, options.approach)
        self.assertEqual(dispatch.VARIANCE_BOOTSTRAP, options.variance)
        self.assertEqual(30, options.B)
        self.assertEqual(5, options.seed)


class RunReplicationsTest(unittest.TestCase):
    """A unittest for run_replications."""

    def setUp(self):
        self.config = harness.ScenarioConfig(
            population_size=200000, n_r=100, n_b=200,
            methods=['UNWEIGHTED-SB', 'TRUE-SR', 'PAPW', 'PM', 'AIPW-PAPW'],
            specs=['TT', 'FF'])

    def test_cells(self):
        result = harness.run_replications(self.config, 3, seed=1)
        cells = [(row.method, row.spec) for row in result.rows]
        self.assertEqual(
            [('UNWEIGHTED-SB', '--'), ('TRUE-SR', '--'), ('PAPW', 'T-'),
             ('PAPW', 'F-'), ('PM', '-T'), ('PM', '-F'), ('AIPW-PAPW', 'TT'),
             ('AIPW-PAPW', 'FF')], cells)
        self.assertEqual([], result.aborted)
        for row in result.rows:
            self.assertEqual(3, row.k_effective)
            self.assertFalse(np.isnan(row.rmse_pct))

    def test_reproducible(self):
        first = harness.run_replications(self.config, 2, seed=4)
        second = harness.run_replications(self.config, 2, seed=4)
        self.assertEqual([row.rbias_pct for row in first.rows],
                         [row.rbias_pct for row in second.rows])

    def test_parallel_matches_serial(self):
        config = self.config._replace(methods=('PAPW', 'PM'))
        serial = harness.run_replications(config, 2, seed=6, jobs=1)
        parallel = harness.run_replications(config, 2, seed=6, jobs=2)
        self.assertEqual([row.rbias_pct for row in serial.rows],
                         [row.rbias_pct for row in parallel.rows])
        self.assertEqual([row.crci_pct for row in serial.rows],
                         [row.crci_pct for row in parallel.rows])

    def test_fixed_population_shares_truth(self):
        config = self.config._replace(fixed_population=True)
        truth_0, _ = harness.run_replication(config, 2, 0)
        truth_1, _ = harness.run_replication(config, 2, 1)
        self.assertEqual(truth_0, truth_1)
        varying_0, _ = harness.run_replication(self.config, 2, 0)
        varying_1, _ = harness.run_replication(self.config, 2, 1)
        self.assertNotEqual(varying_0, varying_1)

    def test_k_must_be_positive(self):
        self.assertRaises(harness.ConfigException, harness.run_replications,
                          self.config, 0, 1)

    def test_writers(self):
        result = harness.run_replications(
            self.config._replace(methods=('UNWEIGHTED-SB', 'PM')), 2,
            seed=3)
        buffer = io.StringIO()
        harness.write_csv(result.rows, buffer)
        lines = buffer.getvalue().splitlines()
        self.assertEqual(','.join(harness.CSV_COLUMNS), lines[0])
        self.assertEqual(1 + len(result.rows), len(lines))
        self.assertTrue(lines[1].startswith('UNWEIGHTED-SB,--,'))

        buffer = io.StringIO()
        harness.write_json(result, buffer)
        document = json.loads(buffer.getvalue())
        self.assertEqual(common.REPORT_SCHEMA_VERSION,
                         document['schema_version'])
        self.assertEqual(2, document['scenario']['K'])
        self.assertEqual(len(result.rows), len(document['rows']))
        self.assertEqual('PM', document['rows'][1]['method'])


class _FailingDispatcher(object):

    def estimate(self, context, method):
        raise ArithmeticError('%s made to fail' % method)


class AbortedCellTest(unittest.TestCase):
    """A unittest for cells with too many failed replications."""

    def setUp(self):
        self._original_dispatcher = dispatch.Dispatcher
        dispatch.Dispatcher = _FailingDispatcher

    def tearDown(self):
        dispatch.Dispatcher = self._original_dispatcher

    def test_aborted_cell_has_nan_metrics(self):
        config = harness.ScenarioConfig(
            population_size=5000, n_r=50, n_b=200,
            methods=['UNWEIGHTED-SB', 'PM'], specs=['TT'])
        result = harness.run_replications(config, 2, seed=0)
        self.assertEqual([('PM', '-T')], result.aborted)
        baseline, pm = result.rows
        self.assertFalse(baseline.aborted)
        self.assertTrue(pm.aborted)
        self.assertEqual(0, pm.k_effective)
        self.assertTrue(np.isnan(pm.rbias_pct))
        self.assertFalse(np.isnan(pm.truth))


if __name__ == '__main__':
    unittest.main()


# vi:sts=4 sw=4 et
