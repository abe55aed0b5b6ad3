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


"""Prediction-model and doubly robust (AIPW) estimators of the population
mean.

The PM estimator imputes y on S_R from an outcome model fitted on S_B and
takes the design-weighted Hajek mean. The AIPW estimators add the
pseudo-weighted S_B residual mean to it, so the result stays consistent when
either the propensity model or the outcome model is right:

    aipw_plugin   plug-in fits, known-N or Hajek normalization
    aipw_joint    propensity and outcome parameters solved jointly from the
                  calibration and residual-balance equations
    aipw_bayes    per-draw AIPW over posterior draws, combined by Rubin's rule
"""


import collections
import logging

import numpy as np
from scipy import linalg
from scipy import special

from pynonprob import common
from pynonprob import glm
from pynonprob import pseudoweight
from pynonprob import sample as sample_module
from pynonprob import util
from pynonprob import variance


_LOGGER = logging.getLogger(__name__)

JACOBIAN_ANALYTIC = 'analytic'
JACOBIAN_NUMERIC = 'numeric'

_FINITE_DIFFERENCE_STEP = 1e-6


class MissingNException(common.NonProbException):
    """Known-N normalization was requested without a population size."""


class MissingPirDrawsException(common.NonProbException):
    """The PAPP route needs draws of the predicted reference probabilities."""


EstimateReport = collections.namedtuple(
    'EstimateReport', ['method', 'point', 'se', 'ci95', 'n_draws_or_boot',
                       'diagnostics'])
EstimateReport.__doc__ = """A point estimate with its uncertainty.

se is NaN until a variance is attached; ci95 is point +/- z_{0.975} se.
"""


DrawSet = collections.namedtuple(
    'DrawSet', ['M', 'y_imputed', 'pib_draws', 'pir_pred_draws'])
DrawSet.__doc__ = """Posterior draws feeding the Bayesian AIPW.

y_imputed is M x n (every record), pib_draws M x n_B and pir_pred_draws an
optional M x n_B matrix of predicted reference probabilities.
"""


BayesResult = collections.namedtuple(
    'BayesResult', ['points', 'within', 'report', 'variance'])


def make_report(method, point, variance_value=None, n_draws_or_boot=0,
                diagnostics=None):
    """Builds an EstimateReport; a negative variance yields a NaN se."""

    diagnostics = dict(diagnostics or {})
    point = float(point)
    if variance_value is None or np.isnan(variance_value):
        se = np.nan
    elif variance_value < 0.0:
        se = np.nan
        diagnostics['negative_variance'] = float(variance_value)
    else:
        se = float(np.sqrt(variance_value))
    half = common.Z_975 * se
    return EstimateReport(method, point, se, (point - half, point + half),
                          int(n_draws_or_boot), diagnostics)


def attach_variance(report, variance_report, n_draws_or_boot=None):
    """Returns report with se and ci95 from a VarianceReport."""

    diagnostics = dict(report.diagnostics)
    diagnostics['variance_estimator'] = variance_report.estimator
    if variance_report.components.get('negative'):
        diagnostics['variance_flag'] = 'negative; bootstrap recommended'
    if n_draws_or_boot is None:
        n_draws_or_boot = report.n_draws_or_boot
    return make_report(report.method, report.point, variance_report.variance,
                       n_draws_or_boot, diagnostics)


def make_draw_set(y_imputed, pib_draws, pir_pred_draws=None):
    """Validates and bundles posterior draws.

    Raises:
        DrawCountMismatchException: when the draw counts differ.
        OutOfRangeException: when a probability draw is outside (0, 1).
    """

    y_imputed = np.atleast_2d(np.asarray(y_imputed, dtype=float))
    pib_draws = np.atleast_2d(np.asarray(pib_draws, dtype=float))
    members = [y_imputed, pib_draws]
    if pir_pred_draws is not None:
        pir_pred_draws = np.atleast_2d(np.asarray(pir_pred_draws,
                                                  dtype=float))
        members.append(pir_pred_draws)
    counts = set(member.shape[0] for member in members)
    if len(counts) != 1:
        raise pseudoweight.DrawCountMismatchException(
            'draw counts differ: %s' % sorted(counts))
    for name, member in (('pib_draws', pib_draws),
                         ('pir_pred_draws', pir_pred_draws)):
        if member is not None and not np.all((member > 0.0) &
                                             (member < 1.0)):
            raise pseudoweight.OutOfRangeException(
                '%s has values outside (0, 1)' % name)
    return DrawSet(y_imputed.shape[0], y_imputed, pib_draws, pir_pred_draws)


def predictions(sample, outcome_fit, design=None):
    """Outcome-model predictions for every record.

    Args:
        sample: CombinedSample.
        outcome_fit: GlmFit, PosteriorDraws, BartFit, callable oracle, or a
                     precomputed array aligned with the records.
        design: features the fit expects, all records; defaults to x* with
                intercept.
    """

    if isinstance(outcome_fit, np.ndarray):
        values = np.asarray(outcome_fit, dtype=float)
        if values.shape[-1] != len(sample):
            raise common.LengthMismatchException(
                'predictions', expected=len(sample), actual=values.shape[-1])
        return values
    if design is None:
        design = sample_module.design_matrix(sample,
                                             common.COVARIATES_XSTAR, True)
    return pseudoweight.predict_mean(outcome_fit, design)


def lwp_design(sample, pir_b=None):
    """PM design [1, w^R] for the linear-in-the-weight prediction.

    Args:
        sample: CombinedSample.
        pir_b: reference probabilities on S_B rows; defaults to the known
               values and is needed when they are absent.
    """

    pi_r = np.array(sample.pi_r, dtype=float)
    pi_r[sample.b_mask] = sample.pi_r_b if pir_b is None else \
        util.as_vector(pir_b, 'pir_b')
    return np.column_stack([np.ones(len(sample)), 1.0 / pi_r])


def _hajek(values, weights):
    return float(np.dot(weights, values) / np.sum(weights))


def pm_point(sample, predictions_r):
    """Hajek mean of S_R predictions with weights 1 / pi^R."""

    return _hajek(predictions_r, 1.0 / sample.pi_r_r)


def pm_estimate(sample, outcome_fit, design=None, method='PM'):
    """PM estimator: the S_R design-weighted Hajek mean of predictions.

    Returns:
        EstimateReport with a NaN se; attach a variance separately.
    """

    m = predictions(sample, outcome_fit, design)
    if m.ndim != 1:
        raise ValueError('pm_estimate needs a single prediction vector; use '
                         'pm_bayes_points for draws')
    point = pm_point(sample, m[sample.r_mask])
    return make_report(method, point, diagnostics={'n_r': sample.n_r})


def pm_bayes_points(sample, imputed):
    """Per-draw PM estimates for an M x n (or M x n_R) imputation matrix."""

    imputed = np.atleast_2d(np.asarray(imputed, dtype=float))
    if imputed.shape[1] == len(sample):
        imputed = imputed[:, sample.r_mask]
    weights = 1.0 / sample.pi_r_r
    return imputed.dot(weights) / weights.sum()


def _pib_values(pib):
    if isinstance(pib, pseudoweight.PseudoInclusion):
        return np.asarray(pib.values, dtype=float)
    return np.asarray(pib, dtype=float)


def _aipw_terms(y_b, m_b, pib, m_r, pi_r):
    weights_b = 1.0 / pib
    weights_r = 1.0 / pi_r
    return (float(np.dot(weights_b, y_b - m_b)), float(weights_b.sum()),
            float(np.dot(weights_r, m_r)), float(weights_r.sum()))


def _aipw_point(terms, normalization, population_size):
    residual_total, n_hat_b, imputed_total, n_hat_r = terms
    if normalization == common.NORMALIZATION_KNOWN_N:
        return (residual_total + imputed_total) / population_size
    return residual_total / n_hat_b + imputed_total / n_hat_r


def _known_population_size(sample, normalization):
    if normalization not in (common.NORMALIZATION_KNOWN_N,
                             common.NORMALIZATION_HAJEK):
        raise ValueError('unknown normalization %r' % normalization)
    if normalization == common.NORMALIZATION_KNOWN_N:
        if sample.population_size is None:
            raise MissingNException(
                'KnownN normalization needs the population size')
        return float(sample.population_size)
    return None


def aipw_plugin(sample, pib, outcome_fit,
                normalization=common.NORMALIZATION_HAJEK, design=None,
                method=None):
    """Plug-in AIPW estimate.

    KnownN: (1/N) sum_B (y - m) / pi^B + (1/N) sum_R m / pi^R.
    Hajek: the two sums are divided by N_B = sum_B 1/pi^B and
    N_R = sum_R 1/pi^R respectively.

    Args:
        sample: CombinedSample.
        pib: PseudoInclusion with a single vector, or the vector itself.
        outcome_fit: see predictions().
        normalization: common.NORMALIZATION_HAJEK or NORMALIZATION_KNOWN_N.
        design: outcome-model features for all records.

    Raises:
        MissingNException: for KnownN without a population size.
    """

    population_size = _known_population_size(sample, normalization)
    pib = util.as_vector(_pib_values(pib), 'pib')
    m = predictions(sample, outcome_fit, design)
    if m.ndim != 1:
        raise ValueError('aipw_plugin needs a single prediction vector')
    terms = _aipw_terms(sample.y_b, m[sample.b_mask], pib,
                        m[sample.r_mask], sample.pi_r_r)
    point = _aipw_point(terms, normalization, population_size)
    return make_report(method or 'AIPW', point, diagnostics={
        'normalization': normalization, 'n_hat_b': terms[1],
        'n_hat_r': terms[3]})


def aipw_residual_form(sample, propensities, predictions_all,
                       population_size=None):
    """Known-N AIPW rearranged over the combined sample:

        (1/N) sum_S w^R [Z (1 - p) / p (y - m) + (1 - Z) m]

    with p = P(Z=1|x*) and w^R = 1 / pi^R known on every record.
    """

    if population_size is None:
        population_size = sample.population_size
    if population_size is None:
        raise MissingNException('the residual form needs N')
    p = util.as_vector(propensities, 'propensities')
    m = util.as_vector(predictions_all, 'predictions')
    util.check_same_length('aipw_residual_form', p, m, sample.z)
    pi_r = np.array(sample.pi_r, dtype=float)
    pi_r[sample.b_mask] = sample.pi_r_b
    z = sample.z.astype(float)
    y = np.where(sample.b_mask, sample.y, 0.0)
    terms = (z * (1.0 - p) / p * (y - m) + (1.0 - z) * m) / pi_r
    return float(terms.sum() / population_size)


class _JointSystem(object):
    """Stacked calibration (propensity) and residual-balance (outcome)
    equations of the jointly solved AIPW.

    With eta = x_qr' beta, m = h(x_pm' theta) and m' = dm/d(x_pm' theta):

        E_qr = sum_B w^R e^{-eta} m' x_pm - sum_R w^R m' x_pm
        E_pm = sum_B w^R e^{-eta} (y - m) x_qr

    m' is 1 for a Linear outcome and m (1 - m) for a Logistic one, so E_qr
    depends on theta only in the Logistic case.
    """

    def __init__(self, x_qr_b, x_pm_b, x_pm_r, y_b, w_b, w_r, family):
        self._x_qr_b = x_qr_b
        self._x_pm_b = x_pm_b
        self._x_pm_r = x_pm_r
        self._y_b = y_b
        self._w_b = w_b
        self._w_r = w_r
        self._family = family
        self._k = x_qr_b.shape[1]

    def split(self, params):
        return params[:self._k], params[self._k:]

    def _mean(self, theta, x_pm):
        """Returns m, m' and the derivative of m' at x_pm' theta."""

        eta = x_pm.dot(theta)
        if self._family == common.FAMILY_LOGISTIC:
            m = special.expit(eta)
            derivative = m * (1.0 - m)
            return m, derivative, derivative * (1.0 - 2.0 * m)
        return eta, np.ones(len(eta)), np.zeros(len(eta))

    def residual(self, params):
        beta, theta = self.split(params)
        odds_weight = self._w_b * np.exp(-self._x_qr_b.dot(beta))
        m_b, derivative_b, _ = self._mean(theta, self._x_pm_b)
        _, derivative_r, _ = self._mean(theta, self._x_pm_r)
        e_qr = (self._x_pm_b.T.dot(odds_weight * derivative_b) -
                self._x_pm_r.T.dot(self._w_r * derivative_r))
        e_pm = self._x_qr_b.T.dot(odds_weight * (self._y_b - m_b))
        return np.concatenate([e_qr, e_pm])

    def jacobian(self, params):
        beta, theta = self.split(params)
        odds_weight = self._w_b * np.exp(-self._x_qr_b.dot(beta))
        m_b, derivative_b, curvature_b = self._mean(theta, self._x_pm_b)
        _, _, curvature_r = self._mean(theta, self._x_pm_r)
        k = self._k
        jacobian = np.zeros((2 * k, 2 * k))
        jacobian[:k, :k] = -self._x_pm_b.T.dot(
            self._x_qr_b * (odds_weight * derivative_b)[:, np.newaxis])
        jacobian[:k, k:] = (
            self._x_pm_b.T.dot(
                self._x_pm_b * (odds_weight * curvature_b)[:, np.newaxis]) -
            self._x_pm_r.T.dot(
                self._x_pm_r * (self._w_r * curvature_r)[:, np.newaxis]))
        jacobian[k:, :k] = -self._x_qr_b.T.dot(
            self._x_qr_b * (odds_weight * (self._y_b - m_b))[:, np.newaxis])
        jacobian[k:, k:] = -self._x_qr_b.T.dot(
            self._x_pm_b * (odds_weight * derivative_b)[:, np.newaxis])
        return jacobian

    def numeric_jacobian(self, params):
        size = len(params)
        jacobian = np.zeros((size, size))
        for j in range(size):
            step = np.zeros(size)
            step[j] = _FINITE_DIFFERENCE_STEP * max(1.0, abs(params[j]))
            jacobian[:, j] = (self.residual(params + step) -
                              self.residual(params - step)) / (2.0 * step[j])
        return jacobian

    def predictions(self, theta, x_pm):
        return self._mean(theta, x_pm)[0]


def _joint_start(sample, qr_design, pm_design, family):
    beta = glm.fit_logistic(qr_design, sample.z.astype(float)).coefficients
    x_pm_b = pm_design[sample.b_mask]
    if family == common.FAMILY_LOGISTIC:
        theta = glm.fit_logistic(x_pm_b, sample.y_b).coefficients
    else:
        theta = glm.fit_linear(x_pm_b, sample.y_b).coefficients
    return np.concatenate([beta, theta])


def aipw_joint(sample, qr_design, pm_design, family=common.FAMILY_LINEAR,
               normalization=common.NORMALIZATION_HAJEK, pir_b=None,
               jacobian=JACOBIAN_ANALYTIC,
               max_iterations=common.DEFAULT_MAX_ITERATIONS,
               tol=common.DEFAULT_SCORE_TOLERANCE, method=None):
    """AIPW with propensity and outcome parameters solved jointly.

    Starts from the logistic MLE of Z on the QR design and the S_B outcome
    fit, then runs damped Newton on the stacked equations. The estimate is
    the AIPW evaluated with the root's pseudo-weights and predictions.

    Args:
        sample: CombinedSample.
        qr_design: propensity design, all records, intercept included.
        pm_design: outcome design, all records, same width as qr_design.
        family: outcome link, common.FAMILY_LINEAR or FAMILY_LOGISTIC.
        normalization: common.NORMALIZATION_HAJEK or NORMALIZATION_KNOWN_N.
        pir_b: reference probabilities on S_B rows for the PAPP route;
               defaults to the known values.
        jacobian: JACOBIAN_ANALYTIC or JACOBIAN_NUMERIC.

    Raises:
        DimensionMismatchException: when the two designs differ in width.
        NoConvergenceException: when Newton stops above tolerance; carries
                                the best residual norm reached.
    """

    qr_design = util.as_matrix(qr_design, 'qr_design')
    pm_design = util.as_matrix(pm_design, 'pm_design')
    if qr_design.shape[1] != pm_design.shape[1]:
        raise common.DimensionMismatchException(
            'joint AIPW needs equal QR and PM dimensions, got %d and %d' %
            (qr_design.shape[1], pm_design.shape[1]),
            expected=qr_design.shape[1], actual=pm_design.shape[1])
    if family not in (common.FAMILY_LINEAR, common.FAMILY_LOGISTIC):
        raise ValueError('joint AIPW supports Linear and Logistic outcomes')
    if jacobian not in (JACOBIAN_ANALYTIC, JACOBIAN_NUMERIC):
        raise ValueError('unknown jacobian mode %r' % jacobian)
    population_size = _known_population_size(sample, normalization)

    pir_b = sample.pi_r_b if pir_b is None else util.as_vector(pir_b,
                                                               'pir_b')
    w_r = 1.0 / sample.pi_r_r
    system = _JointSystem(qr_design[sample.b_mask], pm_design[sample.b_mask],
                          pm_design[sample.r_mask], sample.y_b, 1.0 / pir_b,
                          w_r, family)
    evaluate_jacobian = system.jacobian if jacobian == JACOBIAN_ANALYTIC \
        else system.numeric_jacobian

    threshold = tol * float(w_r.sum())
    params = _joint_start(sample, qr_design, pm_design, family)
    residual = system.residual(params)
    best = (np.max(np.abs(residual)), params)
    iteration = 0
    while np.max(np.abs(residual)) > threshold:
        if iteration >= max_iterations:
            raise common.NoConvergenceException(
                'joint AIPW did not converge in %d iterations' %
                max_iterations, iterations=iteration,
                residual_norm=float(best[0]))
        iteration += 1
        try:
            step = linalg.solve(evaluate_jacobian(params), residual)
        except (linalg.LinAlgError, ValueError):
            raise common.NoConvergenceException(
                'joint AIPW Jacobian singular at iteration %d' % iteration,
                iterations=iteration, residual_norm=float(best[0]))
        norm = np.linalg.norm(residual)
        for _ in range(common.DEFAULT_MAX_HALVINGS):
            candidate = params - step
            candidate_residual = system.residual(candidate)
            if np.all(np.isfinite(candidate_residual)) and \
                    np.linalg.norm(candidate_residual) < norm:
                break
            step = step / 2.0
        if not np.all(np.isfinite(candidate_residual)):
            raise common.NoConvergenceException(
                'joint AIPW step is not finite at iteration %d after %d '
                'halvings' % (iteration, common.DEFAULT_MAX_HALVINGS),
                iterations=iteration, residual_norm=float(best[0]))
        params, residual = candidate, candidate_residual
        if np.max(np.abs(residual)) < best[0]:
            best = (np.max(np.abs(residual)), params)
        _LOGGER.log(common.LOGLEVEL_FINE, 'Joint AIPW iteration %d: '
                    'max|E|=%g', iteration, np.max(np.abs(residual)))

    beta, theta = system.split(params)
    k = len(beta)
    odds = np.exp(qr_design[sample.b_mask].dot(beta))
    pib = pir_b * odds
    m = system.predictions(theta, pm_design)
    terms = _aipw_terms(sample.y_b, m[sample.b_mask], pib, m[sample.r_mask],
                        sample.pi_r_r)
    point = _aipw_point(terms, normalization, population_size)
    return make_report(method or 'AIPW-joint', point, diagnostics={
        'normalization': normalization, 'iterations': iteration,
        'residual_norm_qr': float(np.max(np.abs(residual[:k]))),
        'residual_norm_pm': float(np.max(np.abs(residual[k:]))),
        'beta': beta.tolist(), 'theta': theta.tolist(),
        'n_hat_b': terms[1], 'n_hat_r': terms[3]})


def aipw_bayes(sample, draws, route, normalization=common.NORMALIZATION_HAJEK,
               within_form=variance.FORM_DISPLAYED, method=None):
    """Two-step Bayesian AIPW: one AIPW estimate per posterior draw, Hajek
    normalized with that draw's N_B, combined by Rubin's rule.

    Args:
        sample: CombinedSample.
        draws: DrawSet.
        route: common.ROUTE_PAPW (pi^R known on S_B) or common.ROUTE_PAPP.
        normalization: Hajek by default; KnownN divides both sums by N.
        within_form: form passed to variance.within_variance_approx.

    Returns:
        BayesResult with the per-draw points, per-draw within variances, the
        combined EstimateReport and the Rubin VarianceReport (None for M=1,
        where the se is the single draw's within term).

    Raises:
        DrawCountMismatchException: when the draw members disagree.
        MissingPirDrawsException: under the PAPP route without pir draws.
    """

    if route not in (common.ROUTE_PAPW, common.ROUTE_PAPP):
        raise ValueError('unknown route %r' % route)
    population_size = _known_population_size(sample, normalization)
    if route == common.ROUTE_PAPP and draws.pir_pred_draws is None:
        raise MissingPirDrawsException(
            'the PAPP route needs predicted pi_r draws')
    if route == common.ROUTE_PAPW and np.any(
            np.isnan(sample.pi_r[sample.b_mask])):
        raise sample_module.MissingFieldException('pi_r')
    y_imputed = np.atleast_2d(draws.y_imputed)
    pib_draws = np.atleast_2d(draws.pib_draws)
    if y_imputed.shape[0] != draws.M or pib_draws.shape[0] != draws.M or (
            draws.pir_pred_draws is not None and
            np.atleast_2d(draws.pir_pred_draws).shape[0] != draws.M):
        raise pseudoweight.DrawCountMismatchException(
            'DrawSet members do not all hold %d draws' % draws.M)
    if y_imputed.shape[1] != len(sample) or \
            pib_draws.shape[1] != sample.n_b:
        raise common.LengthMismatchException(
            'DrawSet columns do not align with the sample')

    points = np.empty(draws.M)
    within = np.empty(draws.M)
    for m in range(draws.M):
        imputed = y_imputed[m]
        terms = _aipw_terms(sample.y_b, imputed[sample.b_mask], pib_draws[m],
                            imputed[sample.r_mask], sample.pi_r_r)
        points[m] = _aipw_point(terms, normalization, population_size)
        within[m] = variance.within_variance_approx(
            sample, imputed[sample.r_mask], pib_draws[m], form=within_form)

    diagnostics = {'route': route, 'normalization': normalization,
                   'within_form': within_form}
    if draws.pir_pred_draws is not None:
        diagnostics['pir_pred_mean'] = float(np.mean(draws.pir_pred_draws))
    if draws.M >= 2:
        rubin = variance.rubin_combine(points, within)
        report = make_report(method or 'AIPW-bayes', points.mean(),
                             rubin.variance, draws.M, diagnostics)
    else:
        rubin = None
        report = make_report(method or 'AIPW-bayes', points[0], within[0], 1,
                             diagnostics)
    return BayesResult(points, within, report, rubin)


def baseline_report(method, y, pi=None):
    """Unweighted (pi None) or design-weighted Hajek mean of y with its
    linearized variance; benchmark rows of the simulation tables."""

    y = util.as_vector(y, 'y')
    if pi is None:
        point = float(np.mean(y))
        report = variance.unweighted_variance(y)
    else:
        pi = util.as_vector(pi, 'pi')
        point = _hajek(y, 1.0 / pi)
        report = variance.hajek_variance(y, pi, point)
    return make_report(method, point, report.variance, 0,
                       {'n': len(y)})


# vi:sts=4 sw=4 et
