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


"""Quasi-randomization: pseudo-inclusion probabilities for the
non-probability sample and pseudo-weighted means.

Three routes estimate pi^B for S_B units:

    IPSW  pseudo maximum likelihood (PMLE) propensity pi(x; beta), fitted so
          that the S_B covariate totals match their S_R design estimates.
    PAPW  pi^B = pi^R * p / (1 - p) with p = P(Z=1 | x*) fitted on the
          combined sample and pi^R known for S_B units.
    PAPP  as PAPW but with pi^R replaced by a prediction E(pi^R | x) fitted on
          S_R and p = P(Z=1 | x) not conditioning on d.
"""


import collections
import logging

import numpy as np
import pandas as pd
from scipy import linalg
from scipy import special

from pynonprob import bart
from pynonprob import common
from pynonprob import glm
from pynonprob import sample as sample_module
from pynonprob import util


_LOGGER = logging.getLogger(__name__)


class OutOfRangeException(common.NonProbException):
    """A pseudo-inclusion probability is outside (0, 1)."""

    def __init__(self, name, value=None):
        super(OutOfRangeException, self).__init__(name)
        self.value = value


class DrawCountMismatchException(common.NonProbException):
    """Two draw sets that must pair draw by draw differ in size."""


class ZeroWeightSumException(common.NonProbException):
    """A Hajek mean has no positive weight."""


class InfeasibleException(common.NonProbException):
    """The PMLE estimating equation has no root."""


class SingularJacobianException(common.NonProbException):
    """The PMLE Jacobian cannot be inverted."""


PseudoInclusion = collections.namedtuple(
    'PseudoInclusion', ['method', 'values', 'model_refs'])
PseudoInclusion.__doc__ = """Estimated pi^B for S_B records in record order.

values is a vector, or an M x n_B matrix for posterior draws.
"""


def predict_mean(fit, X):
    """Mean-scale predictions of any supported fit.

    Args:
        fit: GlmFit (vector), PosteriorDraws or BartFit (M x n matrix), or a
             callable X -> vector used as an oracle.
        X: design matrix (for BART, the raw feature matrix).
    """

    if isinstance(fit, (glm.GlmFit, glm.PosteriorDraws)):
        return glm.predict(fit, X, common.SCALE_MEAN)
    if isinstance(fit, bart.BartFit):
        return bart.bart_predict(fit, X, common.SCALE_MEAN)
    if callable(fit):
        return util.as_vector(fit(X), 'oracle predictions')
    raise TypeError('cannot predict from %r' % type(fit))


def _pair_draws(first, second):
    first = np.asarray(first, dtype=float)
    second = np.asarray(second, dtype=float)
    if first.ndim == 2 and second.ndim == 2 and \
            first.shape[0] != second.shape[0]:
        raise DrawCountMismatchException(
            'draw sets of sizes %d and %d cannot be paired' %
            (first.shape[0], second.shape[0]))
    return first, second


def _check_range(method, values):
    bad = ~((values > 0.0) & (values < 1.0))
    if np.any(bad):
        worst = float(np.asarray(values)[bad].flat[0])
        raise OutOfRangeException(
            '%s pseudo-inclusion probability %r outside (0, 1); the '
            'propensity model is inconsistent with pi_r' % (method, worst),
            value=worst)


def _odds(p):
    with np.errstate(divide='ignore'):
        return p / (1.0 - p)


def papw(sample, z_fit, design=None):
    """PAPW pseudo-inclusion probabilities.

    Args:
        sample: CombinedSample with pi_r known on S_B rows.
        z_fit: fit of Z on x* over the combined sample (GlmFit,
               PosteriorDraws, BartFit or oracle callable).
        design: S_B rows of the z_fit design; defaults to x* with intercept.

    Raises:
        MissingFieldException: when pi_r is unknown on some S_B row.
        OutOfRangeException: when some estimate is outside (0, 1).
    """

    pi_r = sample.pi_r_b
    if design is None:
        design = sample_module.design_matrix(
            sample, common.COVARIATES_XSTAR, True)[sample.b_mask]
    p = predict_mean(z_fit, design)
    values = pi_r * _odds(p)
    _check_range(common.QR_PAPW, values)
    return PseudoInclusion(common.QR_PAPW, values, {'z_fit': z_fit})


def papp(sample, pir_fit, z_fit, pir_design=None, z_design=None):
    """PAPP pseudo-inclusion probabilities.

    Draw m of pir_fit is paired with draw m of z_fit when both are draw sets.

    Args:
        sample: CombinedSample.
        pir_fit: fit of pi^R on x over S_R (beta regression fit or draws,
                 logit-target BartFit, or oracle callable).
        z_fit: fit of Z on x over the combined sample.
        pir_design, z_design: S_B rows of the two designs; default x with
                 intercept.

    Raises:
        DrawCountMismatchException: when the two draw sets differ in size.
        OutOfRangeException: when some estimate is outside (0, 1).
    """

    default = None
    if pir_design is None or z_design is None:
        default = sample_module.design_matrix(
            sample, common.COVARIATES_X, True)[sample.b_mask]
    pir = predict_mean(pir_fit, default if pir_design is None
                       else pir_design)
    p = predict_mean(z_fit, default if z_design is None else z_design)
    pir, p = _pair_draws(pir, p)
    values = pir * _odds(p)
    _check_range(common.QR_PAPP, values)
    return PseudoInclusion(common.QR_PAPP, values,
                           {'pir_fit': pir_fit, 'z_fit': z_fit})


def hajek_mean(y, weights):
    """Returns sum(w y) / sum(w).

    Raises:
        LengthMismatchException: when lengths differ.
        ZeroWeightSumException: when there is no weight.
    """

    y = util.as_vector(y, 'y')
    weights = util.as_vector(weights, 'weights')
    util.check_same_length('hajek_mean', y, weights)
    if len(weights) == 0 or not np.sum(weights) > 0.0:
        raise ZeroWeightSumException('weights sum to zero')
    if np.any(weights <= 0.0):
        raise ValueError('Hajek weights must be positive')
    return float(np.dot(weights, y) / np.sum(weights))


def pmle_equation(X_b, X_r, weights_r, beta):
    """Returns (U(beta), H(beta)) with U the PMLE estimating function and
    H = -dU/dbeta = sum_R w pi (1 - pi) x x'."""

    pi = special.expit(X_r.dot(beta))
    u = X_b.sum(axis=0) - X_r.T.dot(weights_r * pi)
    h = X_r.T.dot(X_r * (weights_r * pi * (1.0 - pi))[:, np.newaxis])
    return u, h


def solve_pmle(sample, covariates=common.COVARIATES_X, design=None,
               max_iterations=common.DEFAULT_MAX_ITERATIONS,
               tol=common.DEFAULT_SCORE_TOLERANCE):
    """Solves the PMLE estimating equation by damped Newton from beta = 0.

    U(beta) = sum_{S_B} x - sum_{S_R} pi(x; beta) x / pi^R = 0, converged
    when max |U| <= tol * n_B.

    Args:
        sample: CombinedSample.
        covariates: common.COVARIATES_X or common.COVARIATES_XSTAR.
        design: optional full design matrix (all records, intercept
                included) replacing the covariate selection.

    Raises:
        InfeasibleException: when sum(1/pi^R) < n_B.
        SingularJacobianException: when the S_R design is rank deficient.
        NoConvergenceException: when max_iterations is reached.
    """

    if design is None:
        design = sample_module.design_matrix(sample, covariates, True)
    X_b = design[sample.b_mask]
    X_r = design[sample.r_mask]
    weights_r = 1.0 / sample.pi_r_r
    n_hat = float(weights_r.sum())
    if n_hat < sample.n_b:
        raise InfeasibleException(
            'sum of reference weights %g is below n_B=%d' %
            (n_hat, sample.n_b))
    if np.linalg.matrix_rank(X_r) < X_r.shape[1]:
        raise SingularJacobianException('reference design is rank deficient')

    threshold = tol * sample.n_b
    beta = np.zeros(design.shape[1])
    u, h = pmle_equation(X_b, X_r, weights_r, beta)
    iteration = 0
    while np.max(np.abs(u)) > threshold:
        if iteration >= max_iterations:
            raise common.NoConvergenceException(
                'PMLE did not converge in %d iterations' % max_iterations,
                iterations=iteration, residual_norm=float(np.max(np.abs(u))))
        iteration += 1
        try:
            step = linalg.solve(h, u, assume_a='pos')
        except (linalg.LinAlgError, ValueError):
            raise SingularJacobianException(
                'PMLE Jacobian singular at iteration %d' % iteration)
        norm = np.linalg.norm(u)
        for _ in range(common.DEFAULT_MAX_HALVINGS):
            candidate = beta + step
            candidate_u, candidate_h = pmle_equation(
                X_b, X_r, weights_r, candidate)
            if np.linalg.norm(candidate_u) < norm:
                break
            step = step / 2.0
        beta = candidate
        u, h = candidate_u, candidate_h
        _LOGGER.log(common.LOGLEVEL_FINE, 'PMLE iteration %d: max|U|=%g',
                    iteration, np.max(np.abs(u)))

    vcov = glm._base.symmetrize(linalg.inv(h))
    eta_b = X_b.dot(beta)
    eta_r = X_r.dot(beta)
    pseudo_ll = float(eta_b.sum() -
                      np.sum(weights_r * np.logaddexp(0.0, eta_r)))
    return glm.GlmFit(common.FAMILY_LOGISTIC, beta, None, vcov, True,
                      iteration, pseudo_ll, vcov)


def ipsw(sample, pmle_fit, covariates=common.COVARIATES_X, design=None):
    """IPSW pseudo-inclusion probabilities pi(x; beta_hat) on S_B.

    covariates and design must match those given to solve_pmle.
    """

    if design is None:
        design = sample_module.design_matrix(sample, covariates, True)
    values = special.expit(design[sample.b_mask].dot(
        pmle_fit.coefficients))
    _check_range(common.QR_IPSW, values)
    return PseudoInclusion(common.QR_IPSW, values, {'pmle_fit': pmle_fit})


def ipsw_mean(sample, pmle_fit, covariates=common.COVARIATES_X,
              design=None):
    """Hajek mean of y over S_B with weights 1 / pi(x; beta_hat)."""

    pseudo = ipsw(sample, pmle_fit, covariates, design)
    return hajek_mean(sample.y_b, 1.0 / pseudo.values)


def qr_mean(sample, pseudo):
    """Pseudo-weighted Hajek mean for a single-vector PseudoInclusion."""

    return hajek_mean(sample.y_b, 1.0 / np.asarray(pseudo.values))


def qr_bayes_points(sample, pib_draws):
    """Per-draw pseudo-weighted Hajek means for an M x n_B matrix."""

    weights = 1.0 / np.atleast_2d(pib_draws)
    return weights.dot(sample.y_b) / weights.sum(axis=1)


def export_weights(sample, pseudo):
    """Returns a DataFrame of id, pi_b_hat and weight for S_B records.

    Draw matrices are summarized by their per-unit posterior mean.
    """

    values = np.asarray(pseudo.values, dtype=float)
    if values.ndim == 2:
        values = values.mean(axis=0)
    ids = [record_id for record_id, inside in zip(sample.ids, sample.b_mask)
           if inside]
    return pd.DataFrame({'id': ids, 'pi_b_hat': values,
                         'weight': 1.0 / values})


# vi:sts=4 sw=4 et
