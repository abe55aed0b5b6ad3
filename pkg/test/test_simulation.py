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


"""Tests for simulation module."""


import os
import shutil
import tempfile
import unittest

import numpy as np
from scipy import special

import set_sys_path  # Update sys.path to locate pynonprob module.

from pynonprob import common
from pynonprob import csvio
from pynonprob import simulation


class CalibrateInterceptTest(unittest.TestCase):
    """A unittest for calibrate_intercept."""

    def test_total_is_reached(self):
        linear_part = np.linspace(-2.0, 2.0, 500)
        gamma = simulation.calibrate_intercept(linear_part, 50.0)
        self.assertAlmostEqual(
            50.0, float(np.sum(special.expit(gamma + linear_part))),
            places=6)

    def test_symmetric_half(self):
        linear_part = np.array([-1.0, 1.0])
        self.assertAlmostEqual(
            0.0, simulation.calibrate_intercept(linear_part, 1.0), places=8)

    def test_unreachable_total(self):
        for target in (0.0, 3.0, 5.0):
            try:
                simulation.calibrate_intercept(np.zeros(3), target)
                self.fail('CalibrationFailedException not raised')
            except simulation.CalibrationFailedException as e:
                self.assertEqual((0.0, 3.0), e.achievable_range)


class FkTest(unittest.TestCase):
    """A unittest for fk."""

    def test_values(self):
        x = np.array([0.0, 3.0])
        np.testing.assert_allclose([0.0, np.sin(3.0)],
                                   simulation.fk(simulation.FK_SIN, x))
        np.testing.assert_allclose([1.0, np.exp(1.5)],
                                   simulation.fk(simulation.FK_EXP, x))
        np.testing.assert_allclose([0.0, 3.0],
                                   simulation.fk(simulation.FK_SQR, x))

    def test_unknown(self):
        self.assertRaises(ValueError, simulation.fk, 'COS', np.zeros(1))


class GenSim1Test(unittest.TestCase):
    """A unittest for gen_sim1."""

    def setUp(self):
        self.population = simulation.gen_sim1(20000, 0.5, 7, n_r=100,
                                              n_b=1000)

    def test_columns_and_truth(self):
        units = self.population.units
        self.assertEqual(simulation.SIM1, self.population.scenario)
        self.assertEqual(20000, len(units))
        for column in ('id', 'x_1', 'x_2', 'x_3', 'x_4', 'y', 'pi_r',
                       'pi_b'):
            self.assertTrue(column in units.columns)
        self.assertAlmostEqual(units['y'].mean(),
                               self.population.true_mean['y'])

    def test_inclusion_probabilities(self):
        units = self.population.units
        self.assertAlmostEqual(1000.0, units['pi_b'].sum(), places=5)
        self.assertAlmostEqual(100.0, units['pi_r'].sum(), places=5)
        ratio = units['pi_r'].max() / units['pi_r'].min()
        self.assertAlmostEqual(50.0, ratio, places=6)

    def test_outcome_correlation(self):
        units = self.population.units
        total = units[['x_1', 'x_2', 'x_3', 'x_4']].sum(axis=1)
        correlation = np.corrcoef(total, units['y'])[0, 1]
        self.assertTrue(abs(correlation - 0.5) < 0.03)

    def test_covariate_moments(self):
        units = self.population.units
        # E[x_2] = 1 + 0.3 * 0.5 and so on down the chain.
        expected = {'x_1': 0.5, 'x_2': 1.15, 'x_3': 1.33, 'x_4': 4.298}
        tolerance = {'x_1': 0.02, 'x_2': 0.03, 'x_3': 0.05, 'x_4': 0.1}
        for column, mean in expected.items():
            self.assertTrue(abs(units[column].mean() - mean) <
                            tolerance[column], column)
        self.assertTrue(abs(units['y'].mean() - 9.278) < 0.25)
        self.assertEqual(set([0.0, 1.0]), set(units['x_1'].unique()))

    def test_seeded(self):
        again = simulation.gen_sim1(20000, 0.5, 7, n_r=100, n_b=1000)
        np.testing.assert_array_equal(self.population.units['y'],
                                      again.units['y'])
        other = simulation.gen_sim1(20000, 0.5, 8, n_r=100, n_b=1000)
        self.assertNotEqual(self.population.true_mean['y'],
                            other.true_mean['y'])

    def test_invalid(self):
        self.assertRaises(ValueError, simulation.gen_sim1, 999, 0.5, 0)
        self.assertRaises(ValueError, simulation.gen_sim1, 2000, 0.0, 0)
        self.assertRaises(ValueError, simulation.gen_sim1, 2000, 1.0, 0)


class GenSim2Test(unittest.TestCase):
    """A unittest for gen_sim2."""

    def test_design_variable_correlation(self):
        population = simulation.gen_sim2(20000, 0.6, simulation.FK_EXP, 3)
        units = population.units
        correlation = np.corrcoef(units['x_1'], units['d_1'])[0, 1]
        self.assertTrue(abs(correlation - 0.6) < 0.03)
        self.assertAlmostEqual(100.0, units['pi_r'].sum(), places=5)
        self.assertAlmostEqual(1000.0, units['pi_b'].sum(), places=5)
        self.assertEqual(simulation.FK_EXP, population.config['fk'])

    def test_moments_and_outcome_correlation(self):
        population = simulation.gen_sim2(20000, 0.3, simulation.FK_SQR, 4)
        units = population.units
        for column in ('x_1', 'd_1'):
            self.assertTrue(abs(units[column].mean()) < 0.05, column)
            self.assertTrue(abs(units[column].var() - 1.0) < 0.05, column)
        x, d = units['x_1'], units['d_1']
        signal = 2.0 * x ** 2 / 3.0 - d ** 2 + 0.5 * x * d
        correlation = np.corrcoef(signal, units['y'])[0, 1]
        self.assertTrue(abs(correlation - 0.5) < 0.03)

    def test_rho_zero_allowed(self):
        population = simulation.gen_sim2(2000, 0.0, simulation.FK_SIN, 3)
        self.assertEqual(2000, len(population.units))

    def test_unknown_fk(self):
        self.assertRaises(ValueError, simulation.gen_sim2, 2000, 0.2, 'COS',
                          0)


class GenSim3Test(unittest.TestCase):
    """A unittest for gen_sim3 and two_stage_cluster_sample."""

    def setUp(self):
        self.population = simulation.gen_sim3(40, 60, 0.5, 5, n_r=10,
                                              n_b=500)

    def test_cluster_level_columns(self):
        units = self.population.units
        self.assertEqual(40 * 60, len(units))
        per_cluster = units.groupby('cluster')
        for column in ('x_1', 'x_2', 'd_1', 'u', 'pi_r_cluster',
                       'pi_b_cluster'):
            self.assertTrue((per_cluster[column].nunique() == 1).all())
        self.assertTrue(set(units['yb'].unique()) <= set([0.0, 1.0]))
        self.assertEqual(set(['yc', 'yb']),
                         set(self.population.true_mean))

    def test_cluster_probability_totals(self):
        clusters = self.population.units.groupby('cluster').first()
        self.assertAlmostEqual(10.0, clusters['pi_r_cluster'].sum(),
                               places=5)
        # 500 units at 50 per selected cluster.
        self.assertAlmostEqual(10.0, clusters['pi_b_cluster'].sum(),
                               places=5)

    def test_intraclass_correlation(self):
        population = simulation.gen_sim3(1000, 50, 0.8, 1)
        grouped = population.units.groupby('cluster')['yc']
        n_alpha = 50
        between = n_alpha * grouped.mean().var(ddof=1)
        within = grouped.var(ddof=1).mean()
        icc = (between - within) / (between + (n_alpha - 1) * within)
        self.assertTrue(0.15 <= icc <= 0.25, icc)
        self.assertTrue(population.config['sigma_e2'] > 1.0)

    def test_two_stage_sample(self):
        records = simulation.two_stage_cluster_sample(
            self.population, simulation.PI_B, 5, seed=2)
        labels = [record.cluster_id for record in records]
        for label in set(labels):
            self.assertEqual(5, labels.count(label))
            self.assertTrue(label.startswith('B:'))
        self.assertEqual(len(records), len(set(r.id for r in records)))
        self.assertTrue(all(record.z == common.Z_NONPROB
                            for record in records))

    def test_cluster_too_small(self):
        self.assertRaises(simulation.ClusterTooSmallException,
                          simulation.two_stage_cluster_sample,
                          self.population, simulation.PI_R, 61, 0)

    def test_unclustered_population(self):
        population = simulation.gen_sim1(2000, 0.5, 0)
        self.assertRaises(ValueError, simulation.two_stage_cluster_sample,
                          population, simulation.PI_R, 1, 0)

    def test_invalid(self):
        self.assertRaises(ValueError, simulation.gen_sim3, 9, 60, 0.5, 0)
        self.assertRaises(ValueError, simulation.gen_sim3, 40, 1, 0.5, 0)
        self.assertRaises(ValueError, simulation.gen_sim3, 40, 60, 1.0, 0)


class SamplingTest(unittest.TestCase):
    """A unittest for poisson_sample, draw_samples and to_combined."""

    def setUp(self):
        self.population = simulation.gen_sim1(20000, 0.5, 11, n_r=200,
                                              n_b=1000)

    def test_poisson_sample(self):
        s_r = simulation.poisson_sample(self.population, simulation.PI_R, 1)
        # Expected 200; five standard deviations.
        self.assertTrue(abs(len(s_r) - 200) < 5 * np.sqrt(200))
        self.assertTrue(all(record.id.startswith('R') for record in s_r))
        self.assertTrue(all(record.z == common.Z_REFERENCE
                            for record in s_r))
        self.assertTrue(all(record.pi_r is not None for record in s_r))

    def test_pi_r_unknown(self):
        s_b = simulation.poisson_sample(self.population, simulation.PI_B, 1,
                                        pi_r_known=False)
        self.assertTrue(all(record.pi_r is None for record in s_b))
        self.assertTrue(all(record.y is not None for record in s_b))

    def test_invalid_pi_field(self):
        self.assertRaises(ValueError, simulation.poisson_sample,
                          self.population, 'Q', 1)

    def test_to_combined(self):
        s_r, s_b = simulation.draw_samples(self.population, 4)
        combined, y_r = simulation.to_combined(self.population, s_r, s_b)
        self.assertEqual(len(s_r), combined.n_r)
        self.assertEqual(len(s_b), combined.n_b)
        self.assertEqual(len(s_r), len(y_r))
        self.assertTrue(np.all(np.isnan(combined.y[combined.r_mask])))
        self.assertEqual(20000, combined.population_size)
        self.assertEqual(('x_1', 'x_2', 'x_3', 'x_4'),
                         tuple(combined.x_star_layout.x_names))

    def test_draws_are_seeded(self):
        first = simulation.draw_samples(self.population, 4)
        second = simulation.draw_samples(self.population, 4)
        self.assertEqual([r.id for r in first[1]], [r.id for r in second[1]])


class ExportCsvTest(unittest.TestCase):
    """A unittest for export_csv."""

    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_read_back(self):
        population = simulation.gen_sim2(2000, 0.3, simulation.FK_SQR, 2,
                                         n_r=50, n_b=200)
        s_r, s_b = simulation.draw_samples(population, 3)
        reference_path = os.path.join(self.directory, 'reference.csv')
        nonprob_path = os.path.join(self.directory, 'nonprob.csv')
        simulation.export_csv([r._replace(y=None) for r in s_r],
                              reference_path)
        simulation.export_csv(s_b, nonprob_path)
        combined = csvio.read_combined(reference_path, nonprob_path)
        self.assertEqual(len(s_r), combined.n_r)
        np.testing.assert_array_equal([r.y for r in s_b], combined.y_b)
        self.assertEqual(s_b[0].d, combined.records[combined.n_r].d)

    def test_no_records(self):
        self.assertRaises(ValueError, simulation.export_csv, [],
                          os.path.join(self.directory, 'empty.csv'))


class WorkingModelsTest(unittest.TestCase):
    """A unittest for working_models."""

    def test_sim1_drops_last_covariate(self):
        x = np.arange(8.0).reshape(2, 4)
        correct = simulation.working_models(simulation.SIM1, True)
        reduced = simulation.working_models(simulation.SIM1, False)
        self.assertEqual((2, 4), correct.qr(x, None).shape)
        np.testing.assert_array_equal(x[:, :3], reduced.pm(x, None))

    def test_sim2_true_outcome_terms(self):
        x = np.array([[0.0], [3.0]])
        d = np.array([[1.0], [2.0]])
        models = simulation.working_models(simulation.SIM2, True,
                                           simulation.FK_SQR)
        np.testing.assert_allclose([[0.0, 1.0, 0.0], [3.0, 4.0, 6.0]],
                                   models.pm(x, d))
        np.testing.assert_allclose([[1.0], [4.0]], models.pir(x, d))
        main = simulation.working_models(simulation.SIM2, False)
        np.testing.assert_array_equal(np.hstack([x, d]), main.pm(x, d))
        np.testing.assert_array_equal(x, main.qr_x(x, d))

    def test_unknown_scenario(self):
        self.assertRaises(ValueError, simulation.working_models, 'sim4',
                          True)
        self.assertRaises(ValueError, simulation.generate, 'sim4', 0, 0.5)


if __name__ == '__main__':
    unittest.main()


# vi:sts=4 sw=4 et
