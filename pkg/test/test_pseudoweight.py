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


"""Tests for pseudoweight module."""


import unittest

import numpy as np
from scipy import special

import set_sys_path  # Update sys.path to locate pynonprob module.

from pynonprob import common
from pynonprob import glm
from pynonprob import pseudoweight
from pynonprob import sample as sample_module
from test import mock


def _papw_sample(pi_r_b):
    return mock.make_sample(
        [(0.0, 0.5), (1.0, 0.5)],
        [(0.0, 1.0, pi_r) for pi_r in pi_r_b])


class PapwTest(unittest.TestCase):
    """A unittest for papw."""

    def test_even_odds(self):
        combined = _papw_sample([0.1])
        pseudo = pseudoweight.papw(combined, mock.ConstantPredictor(0.5))
        self.assertEqual(common.QR_PAPW, pseudo.method)
        np.testing.assert_allclose([0.1], pseudo.values)

    def test_odds_four(self):
        combined = _papw_sample([0.1, 0.1])
        predictor = mock.ConstantPredictor(0.8)
        pseudo = pseudoweight.papw(combined, predictor)
        np.testing.assert_allclose([0.4, 0.4], pseudo.values)
        self.assertEqual([2], predictor.calls)

    def test_out_of_range(self):
        combined = _papw_sample([0.5])
        try:
            pseudoweight.papw(combined, mock.ConstantPredictor(0.8))
            self.fail('OutOfRangeException not raised')
        except pseudoweight.OutOfRangeException as e:
            self.assertAlmostEqual(2.0, e.value)

    def test_missing_pi_r(self):
        combined = mock.make_sample([(0.0, 0.5)], [(0.0, 1.0)])
        self.assertRaises(sample_module.MissingFieldException,
                          pseudoweight.papw, combined,
                          mock.ConstantPredictor(0.5))

    def test_draws_give_matrix(self):
        combined = _papw_sample([0.1, 0.2])
        draws = glm.PosteriorDraws(common.FAMILY_LOGISTIC,
                                   np.array([[0.0, 0.0], [np.log(0.25),
                                                          0.0]]),
                                   2, 0, 1, 0.3)
        pseudo = pseudoweight.papw(combined, draws)
        np.testing.assert_allclose([[0.1, 0.2], [0.025, 0.05]],
                                   pseudo.values)

    def test_glm_fit(self):
        combined = _papw_sample([0.1, 0.2])
        design = sample_module.design_matrix(combined)
        fit = glm.GlmFit(common.FAMILY_LOGISTIC, np.zeros(design.shape[1]),
                         None, None, True, 0, 0.0, None)
        pseudo = pseudoweight.papw(combined, fit)
        np.testing.assert_allclose([0.1, 0.2], pseudo.values)


class PappTest(unittest.TestCase):
    """A unittest for papp."""

    def test_prediction_times_odds(self):
        combined = mock.make_sample([(0.0, 0.5), (1.0, 0.5)],
                                    [(0.0, 1.0), (1.0, 2.0)])
        pseudo = pseudoweight.papp(combined, mock.ConstantPredictor(0.2),
                                   mock.ConstantPredictor(0.5))
        self.assertEqual(common.QR_PAPP, pseudo.method)
        np.testing.assert_allclose([0.2, 0.2], pseudo.values)

    def test_draw_count_mismatch(self):
        combined = mock.make_sample([(0.0, 0.5), (1.0, 0.5)],
                                    [(0.0, 1.0), (1.0, 2.0)])
        pir = glm.PosteriorDraws(common.FAMILY_BETA, np.zeros((3, 3)), 2, 0,
                                 1, 0.3)
        z = glm.PosteriorDraws(common.FAMILY_LOGISTIC, np.zeros((2, 2)), 2, 0,
                               1, 0.3)
        self.assertRaises(pseudoweight.DrawCountMismatchException,
                          pseudoweight.papp, combined, pir, z)

    def test_paired_draws(self):
        combined = mock.make_sample([(0.0, 0.5), (1.0, 0.5)],
                                    [(0.0, 1.0), (1.0, 2.0)])
        pir = glm.PosteriorDraws(common.FAMILY_BETA,
                                 np.array([[special.logit(0.2), 0.0, 5.0],
                                           [special.logit(0.4), 0.0, 5.0]]),
                                 2, 0, 1, 0.3)
        z = glm.PosteriorDraws(common.FAMILY_LOGISTIC,
                               np.array([[0.0, 0.0], [np.log(0.5), 0.0]]),
                               2, 0, 1, 0.3)
        pseudo = pseudoweight.papp(combined, pir, z)
        np.testing.assert_allclose([[0.2, 0.2], [0.2, 0.2]], pseudo.values)


class HajekMeanTest(unittest.TestCase):
    """A unittest for hajek_mean."""

    def test_weighted(self):
        self.assertAlmostEqual(3.5, pseudoweight.hajek_mean([2.0, 4.0],
                                                            [1.0, 3.0]))

    def test_empty(self):
        self.assertRaises(pseudoweight.ZeroWeightSumException,
                          pseudoweight.hajek_mean, [], [])

    def test_length_mismatch(self):
        self.assertRaises(common.LengthMismatchException,
                          pseudoweight.hajek_mean, [1.0, 2.0], [1.0])

    def test_non_positive_weight(self):
        self.assertRaises(ValueError, pseudoweight.hajek_mean,
                          [1.0, 2.0], [1.0, -1.0])

    def test_qr_mean_and_bayes_points(self):
        combined = mock.aipw_toy_sample()
        pseudo = pseudoweight.PseudoInclusion(common.QR_PAPW,
                                              np.array([0.5, 0.25]), {})
        # Weights 2 and 4 on y = 1 and 3.
        self.assertAlmostEqual(7.0 / 3.0,
                               pseudoweight.qr_mean(combined, pseudo))
        points = pseudoweight.qr_bayes_points(
            combined, np.array([[0.5, 0.25], [0.5, 0.5]]))
        np.testing.assert_allclose([7.0 / 3.0, 2.0], points)


class PmleTest(unittest.TestCase):
    """A unittest for solve_pmle and ipsw."""

    def test_intercept_only(self):
        combined = mock.make_sample(
            [(x, 0.1) for x in (0.0, 1.0, 2.0, 3.0)],
            [(x, 1.0) for x in (0.0, 1.0, 2.0, 3.0, 4.0)])
        design = np.ones((len(combined), 1))
        fit = pseudoweight.solve_pmle(combined, design=design)
        # N_hat = 40, n_B = 5.
        self.assertAlmostEqual(special.logit(5.0 / 40.0),
                               fit.coefficients[0], places=7)
        pseudo = pseudoweight.ipsw(combined, fit, design=design)
        np.testing.assert_allclose(np.full(5, 0.125), pseudo.values)
        self.assertAlmostEqual(1.0, pseudoweight.ipsw_mean(
            combined, fit, design=design))

    def test_infeasible(self):
        combined = mock.make_sample([(0.0, 0.9)],
                                    [(0.0, 1.0), (1.0, 1.0), (2.0, 1.0)])
        self.assertRaises(pseudoweight.InfeasibleException,
                          pseudoweight.solve_pmle, combined)

    def test_singular_reference_design(self):
        combined = mock.make_sample([(1.0, 0.1), (1.0, 0.1), (1.0, 0.1)],
                                    [(0.0, 1.0), (2.0, 1.0)])
        self.assertRaises(pseudoweight.SingularJacobianException,
                          pseudoweight.solve_pmle, combined)

    def test_equation_root(self):
        combined, _, _ = mock.sim1_sample(seed=4)
        fit = pseudoweight.solve_pmle(combined)
        design = sample_module.design_matrix(combined, common.COVARIATES_X)
        u, _ = pseudoweight.pmle_equation(
            design[combined.b_mask], design[combined.r_mask],
            1.0 / combined.pi_r_r, fit.coefficients)
        self.assertTrue(np.max(np.abs(u)) <=
                        common.DEFAULT_SCORE_TOLERANCE * combined.n_b)
        pseudo = pseudoweight.ipsw(combined, fit)
        self.assertEqual(combined.n_b, len(pseudo.values))
        self.assertTrue(np.all((pseudo.values > 0) & (pseudo.values < 1)))

    def test_pmle_jacobian(self):
        rng = np.random.default_rng(1)
        X_b = np.column_stack([np.ones(20), rng.standard_normal(20)])
        X_r = np.column_stack([np.ones(30), rng.standard_normal(30)])
        weights = rng.uniform(5.0, 15.0, 30)
        beta = np.array([-1.0, 0.3])
        _, h = pseudoweight.pmle_equation(X_b, X_r, weights, beta)
        numeric = np.empty((2, 2))
        for j in range(2):
            step = np.zeros(2)
            step[j] = 1e-6
            upper, _ = pseudoweight.pmle_equation(X_b, X_r, weights,
                                                  beta + step)
            lower, _ = pseudoweight.pmle_equation(X_b, X_r, weights,
                                                  beta - step)
            numeric[:, j] = -(upper - lower) / 2e-6
        np.testing.assert_allclose(h, numeric, rtol=1e-4)


class ExportWeightsTest(unittest.TestCase):
    """A unittest for export_weights."""

    def test_frame(self):
        combined = mock.aipw_toy_sample()
        pseudo = pseudoweight.PseudoInclusion(
            common.QR_PAPW, np.array([[0.5, 0.2], [0.5, 0.3]]), {})
        frame = pseudoweight.export_weights(combined, pseudo)
        self.assertEqual(['id', 'pi_b_hat', 'weight'], list(frame.columns))
        self.assertEqual(['B0', 'B1'], list(frame['id']))
        np.testing.assert_allclose([0.5, 0.25], frame['pi_b_hat'])
        np.testing.assert_allclose([2.0, 4.0], frame['weight'])


class PredictMeanTest(unittest.TestCase):
    """A unittest for predict_mean."""

    def test_unsupported(self):
        self.assertRaises(TypeError, pseudoweight.predict_mean, 3.0,
                          np.ones((2, 1)))


if __name__ == '__main__':
    unittest.main()


# vi:sts=4 sw=4 et
