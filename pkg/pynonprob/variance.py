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


"""Variance estimators for the pseudo-weighted, prediction and doubly robust
means.

    sandwich_papw             linearization of the PAPW Hajek mean with the
                              propensity model's estimating equation
    chen_dr_variance          V1 + V2 - B(V2) for the plug-in AIPW mean
    rao_wu_bootstrap          with-replacement resampling of n-1 units (or
                              PSUs) per sample with rescaled weights
    rubin_combine             multiple-imputation combination of draws
    within_variance_approx    per-draw within variance of the Bayesian AIPW
"""


import collections
import logging

import numpy as np
from scipy import linalg

from pynonprob import common
from pynonprob import sample as sample_module
from pynonprob import util


_LOGGER = logging.getLogger(__name__)

FORM_LINEARIZED = 'linearized'
FORM_DISPLAYED = 'displayed'


class SingularMatrixException(common.NonProbException):
    """A matrix of the sandwich could not be inverted."""


class TooFewDrawsException(common.NonProbException):
    """Rubin's rule needs at least two draws."""


class BootstrapFailedException(common.NonProbException):
    """Too many bootstrap replicates failed."""

    def __init__(self, name, failures=None):
        super(BootstrapFailedException, self).__init__(name)
        self.failures = failures or []


VarianceReport = collections.namedtuple(
    'VarianceReport', ['estimator', 'variance', 'components'])
VarianceReport.__doc__ = """A variance estimate with its named components.

components['negative'] is True when an assembled linearization variance
is below zero; the value is reported unfloored.
"""


def _population_size(sample, population_size):
    if population_size is not None:
        return float(population_size)
    return sample.estimated_population_size()


def sandwich_papw(sample, pib, propensities, design, point,
                  population_size=None):
    """Sandwich variance of the PAPW Hajek mean.

    Args:
        sample: CombinedSample.
        pib: PAPW pseudo-inclusion probabilities on S_B (vector).
        propensities: fitted P(Z=1|x*) for every record.
        design: x* design (with intercept) of the propensity model, all
                records.
        point: the PAPW estimate.
        population_size: N; defaults to the sample's N or its S_R estimate.

    Raises:
        SingularMatrixException: when sum p x* x*' is singular.
    """

    n_pop = _population_size(sample, population_size)
    pib = util.as_vector(pib, 'pib')
    p = util.as_vector(propensities, 'propensities')
    x_b = design[sample.b_mask]
    p_b = p[sample.b_mask]
    residual = (sample.y_b - point) / pib

    first = np.sum((1.0 - pib) * residual ** 2) / n_pop ** 2
    information = design.T.dot(design * p[:, np.newaxis]) / n_pop
    gradient = x_b.T.dot(residual) / n_pop
    if np.linalg.matrix_rank(information) < information.shape[0]:
        raise SingularMatrixException('sum of p x* x*\' is singular')
    try:
        b = linalg.solve(information, gradient, assume_a='sym')
    except linalg.LinAlgError:
        raise SingularMatrixException('sum of p x* x*\' is singular')
    cross = x_b.T.dot((1.0 - p_b) * residual) / n_pop ** 2
    second = -2.0 * b.dot(cross)
    third = b.dot(information / n_pop).dot(b)
    total = first + second + third
    return VarianceReport('sandwich', float(total), {
        'first': float(first), 'second': float(second),
        'third': float(third), 'b_vector': b.tolist(),
        'negative': bool(total < 0.0)})


def chen_dr_variance(sample, pib, predictions, sigma2, population_size=None):
    """Asymptotic variance V1 + V2 - B(V2) of the plug-in AIPW mean.

    V1 is the Hajek-linearized Poisson design variance of the PM estimator
    over S_R; V2 and B(V2) follow the pseudo-weighted residual formulas.

    Args:
        sample: CombinedSample.
        pib: pseudo-inclusion probabilities on S_B.
        predictions: outcome-model predictions for every record.
        sigma2: Var(y|x) from the outcome model, a scalar or one value per
                record.
        population_size: N; defaults to the sample's N or its S_R estimate.
    """

    n_pop = _population_size(sample, population_size)
    pib = util.as_vector(pib, 'pib')
    m = util.as_vector(predictions, 'predictions')
    sigma2 = np.broadcast_to(np.asarray(sigma2, dtype=float), m.shape)

    pi_r = sample.pi_r_r
    m_r = m[sample.r_mask]
    weights_r = 1.0 / pi_r
    n_hat_r = weights_r.sum()
    pm_point = np.dot(weights_r, m_r) / n_hat_r
    v1 = np.sum((1.0 - pi_r) * weights_r ** 2 *
                (m_r - pm_point) ** 2) / n_hat_r ** 2
    residual = sample.y_b - m[sample.b_mask]
    v2 = np.sum((1.0 - pib) / pib ** 2 * residual ** 2) / n_pop ** 2
    bias = (np.sum(sigma2[sample.b_mask] / pib) -
            np.sum(sigma2[sample.r_mask] * weights_r)) / n_pop ** 2
    total = v1 + v2 - bias
    if total < 0.0:
        _LOGGER.warning('Assembled DR variance %g is negative; consider the '
                        'bootstrap', total)
    return VarianceReport('chen', float(total), {
        'V1': float(v1), 'V2': float(v2), 'B': float(bias),
        'negative': bool(total < 0.0)})


def hajek_variance(y, pi, point=None):
    """Poisson-design linearized variance of a Hajek mean."""

    y = util.as_vector(y, 'y')
    pi = util.as_vector(pi, 'pi')
    weights = 1.0 / pi
    n_hat = weights.sum()
    if point is None:
        point = np.dot(weights, y) / n_hat
    value = np.sum((1.0 - pi) * weights ** 2 * (y - point) ** 2) / n_hat ** 2
    return VarianceReport('hajek', float(value), {})


def unweighted_variance(y):
    y = util.as_vector(y, 'y')
    if len(y) < 2:
        return VarianceReport('unweighted', 0.0, {})
    return VarianceReport('unweighted', float(np.var(y, ddof=1) / len(y)), {})


def ipsw_variance(sample, pmle_fit, design, point, population_size=None):
    """Linearization variance of the IPSW Hajek mean.

    The propensity estimating equation contributes b' D b, with D the Poisson
    design variance of the S_R weighted propensity totals.

    Args:
        sample: CombinedSample.
        pmle_fit: GlmFit from solve_pmle.
        design: PMLE design (with intercept) for every record.
        point: the IPSW estimate.
    """

    n_pop = _population_size(sample, population_size)
    beta = np.asarray(pmle_fit.coefficients)
    x_b = design[sample.b_mask]
    x_r = design[sample.r_mask]
    pi_b = 1.0 / (1.0 + np.exp(-x_b.dot(beta)))
    pi_on_r = 1.0 / (1.0 + np.exp(-x_r.dot(beta)))
    weights_r = 1.0 / sample.pi_r_r
    residual = sample.y_b - point

    gradient = x_b.T.dot((1.0 / pi_b - 1.0) * residual)
    information = x_r.T.dot(
        x_r * (weights_r * pi_on_r * (1.0 - pi_on_r))[:, np.newaxis])
    try:
        b = linalg.solve(information, gradient, assume_a='sym')
    except linalg.LinAlgError:
        raise SingularMatrixException('PMLE information is singular')
    linear = residual / pi_b - x_b.dot(b)
    first = np.sum((1.0 - pi_b) * linear ** 2) / n_pop ** 2
    scores = x_r * (weights_r * pi_on_r)[:, np.newaxis]
    design_variance = scores.T.dot(
        scores * (1.0 - sample.pi_r_r)[:, np.newaxis])
    second = b.dot(design_variance).dot(b) / n_pop ** 2
    total = first + second
    return VarianceReport('ipsw', float(total), {
        'first': float(first), 'second': float(second),
        'b_vector': b.tolist(), 'negative': bool(total < 0.0)})


def pm_variance(sample, predictions_r, point, outcome_vcov, design_r,
                derivative=None):
    """Variance of the PM estimator: design variance of the imputed Hajek
    mean over S_R plus the outcome-model term g' Var(theta) g.

    Args:
        sample: CombinedSample.
        predictions_r: predictions on S_R rows.
        point: the PM estimate.
        outcome_vcov: coefficient covariance of the outcome model.
        design_r: outcome-model design on S_R rows.
        derivative: d prediction / d linear predictor on S_R rows; ones for
                    the linear family.
    """

    pi_r = sample.pi_r_r
    design_part = hajek_variance(predictions_r, pi_r, point).variance
    weights_r = 1.0 / pi_r
    if derivative is None:
        derivative = np.ones(len(pi_r))
    g = design_r.T.dot(weights_r * derivative) / weights_r.sum()
    model_part = float(g.dot(outcome_vcov).dot(g))
    return VarianceReport('pm', design_part + model_part, {
        'design': design_part, 'model': model_part})


def rao_wu_weights(weights, counts, n):
    """Replicate weights w * n / (n - 1) * h for units drawn h times."""

    if n < 2:
        raise ValueError('Rao-Wu rescaling needs at least two units')
    return (np.asarray(weights, dtype=float) * n / (n - 1.0) *
            np.asarray(counts, dtype=float))


def _groups(sample, mask, cluster_aware):
    rows = np.flatnonzero(mask)
    if not cluster_aware:
        return [rows[i:i + 1] for i in range(len(rows))]
    codes = sample.cluster_codes[rows]
    if np.any(codes < 0):
        raise ValueError('cluster-aware bootstrap needs cluster ids on '
                         'every record')
    groups = collections.OrderedDict()
    for row, code in zip(rows, codes):
        groups.setdefault(code, []).append(row)
    return [np.asarray(group) for group in groups.values()]


def bootstrap_replicate(sample, rng, replicate, cluster_aware=False):
    """Draws one Rao-Wu replicate of the combined sample.

    n-1 units (or PSUs) are drawn with replacement from each sample; every
    copy of an S_R unit carries the weight w * n_R / (n_R - 1), so a unit
    drawn h times carries h times that in total.
    """

    index = []
    ids = []
    labels = []
    pi_r = []
    source_ids = sample.ids
    source_labels = sample.cluster_labels
    for mask, reference in ((sample.r_mask, True), (sample.b_mask, False)):
        groups = _groups(sample, mask, cluster_aware)
        n = len(groups)
        if n < 2:
            raise ValueError('bootstrap needs at least two units or PSUs '
                             'per sample')
        counts = np.bincount(rng.integers(0, n, size=n - 1), minlength=n)
        for group, count in zip(groups, counts):
            for copy in range(count):
                for row in group:
                    index.append(row)
                    ids.append('%s#%d#%d' % (source_ids[row], replicate,
                                             copy))
                    label = source_labels[row]
                    labels.append(None if label is None else
                                  '%s#%d' % (label, copy))
                    if reference:
                        weight = rao_wu_weights(
                            1.0 / sample.pi_r[row], 1, n)
                        pi_r.append(1.0 / weight)
                    else:
                        pi_r.append(sample.pi_r[row])
    return sample_module.take(sample, index, ids, labels, pi_r)


def rao_wu_bootstrap(sample, estimator, B, seed, cluster_aware=False):
    """Rao-Wu rescaling bootstrap variance of estimator(sample).

    Replicate b uses the random stream derived from (seed, b), so results do
    not depend on evaluation order. Up to 5% of replicates may fail; they are
    dropped and counted.

    Args:
        sample: CombinedSample.
        estimator: callable CombinedSample -> point estimate.
        B: number of replicates, at least 2.
        seed: top-level seed.
        cluster_aware: resample PSUs instead of units.

    Raises:
        BootstrapFailedException: when more than 5% of replicates fail.
    """

    if B < 2:
        raise ValueError('B must be at least 2')
    points = []
    failures = []
    for b in range(B):
        rng = util.derive_rng(seed, b)
        try:
            replicate = bootstrap_replicate(sample, rng, b, cluster_aware)
            points.append(float(estimator(replicate)))
        except (common.NonProbException, ArithmeticError,
                np.linalg.LinAlgError, ValueError) as e:
            failures.append((b, str(e)))
            _LOGGER.log(common.LOGLEVEL_FINE, 'Replicate %d failed: %s',
                        b, e)
    if len(failures) > common.BOOTSTRAP_MAX_FAILURE_FRACTION * B:
        raise BootstrapFailedException(
            '%d of %d bootstrap replicates failed' % (len(failures), B),
            failures=failures)
    if failures:
        _LOGGER.warning('Dropped %d of %d bootstrap replicates',
                        len(failures), B)
    points = np.asarray(points)
    variance = float(np.mean((points - points.mean()) ** 2))
    return VarianceReport('bootstrap', variance, {
        'B': B, 'failures': len(failures),
        'replicate_mean': float(points.mean())})


def rubin_combine(per_draw_points, within_variances):
    """Rubin's rule: mean within variance plus (1 + 1/M) times the between
    variance (sample variance of the draws).

    Raises:
        TooFewDrawsException: when M < 2.
    """

    points = util.as_vector(per_draw_points, 'per_draw_points')
    within = util.as_vector(within_variances, 'within_variances')
    util.check_same_length('rubin_combine', points, within)
    m = len(points)
    if m < 2:
        raise TooFewDrawsException('Rubin combination needs M >= 2, got %d'
                                   % m)
    within_mean = float(within.mean())
    between = float(np.var(points, ddof=1))
    total = within_mean + (1.0 + 1.0 / m) * between
    return VarianceReport('rubin', total, {
        'within': within_mean, 'between': between, 'M': m})


def _sample_variance(values):
    if len(values) < 2:
        return 0.0
    return float(np.var(values, ddof=1))


def _cluster_totals(values, codes, mask):
    """Sums values by cluster over masked rows; returns (totals, sizes,
    first-row index of each cluster)."""

    codes = codes[mask]
    values = values[mask]
    if np.any(codes < 0):
        return values, np.ones(len(values)), np.arange(len(values))
    unique, first, inverse = np.unique(codes, return_index=True,
                                       return_inverse=True)
    totals = np.bincount(inverse, weights=values)
    sizes = np.bincount(inverse).astype(float)
    return totals, sizes, first


def within_variance_approx(sample, predictions_r, pib,
                           form=FORM_DISPLAYED, clustered=None):
    """Approximate within-draw variance of one Bayesian AIPW draw.

    The first term is the pseudo-weighted variance of y over S_B,
    var(y) sum(1/pib^2) / N_B^2; the second is the variance the random
    reference weights induce in the imputed S_R mean,
    var(1/pi^R) / N_R^2 times a sum of squared deviations of the
    predictions. The default form='displayed' has the cross term
    -2 sum(yhat); form='linearized' takes the deviations from the ratio
    t_R / N_R instead. Under clustering, outcomes and predictions are cluster
    totals and counts are cluster counts.

    Args:
        sample: CombinedSample.
        predictions_r: predictions of the draw on S_R rows.
        pib: pseudo-inclusion probabilities of the draw on S_B rows.
        form: FORM_LINEARIZED or FORM_DISPLAYED.
        clustered: aggregate by cluster; defaults to sample.has_clusters.
    """

    if form not in (FORM_LINEARIZED, FORM_DISPLAYED):
        raise ValueError('unknown form %r' % form)
    if clustered is None:
        clustered = sample.has_clusters
    predictions_r = util.as_vector(predictions_r, 'predictions_r')
    pib = util.as_vector(pib, 'pib')
    pi_r = sample.pi_r_r
    n_hat_b = float(np.sum(1.0 / pib))
    n_hat_r = float(np.sum(1.0 / pi_r))

    codes = sample.cluster_codes if clustered else \
        np.full(len(sample), -1)
    y_full = np.zeros(len(sample))
    y_full[sample.b_mask] = sample.y_b
    y_units, _, first_b = _cluster_totals(y_full, codes, sample.b_mask)
    pib_units = pib[first_b]

    prediction_full = np.zeros(len(sample))
    prediction_full[sample.r_mask] = predictions_r
    yhat_units, sizes_r, first_r = _cluster_totals(prediction_full, codes,
                                                   sample.r_mask)
    weight_units = 1.0 / pi_r[first_r]

    first_term = (_sample_variance(y_units) * np.sum(1.0 / pib_units ** 2) /
                  n_hat_b ** 2)
    weight_variance = _sample_variance(weight_units)
    if weight_variance == 0.0:
        _LOGGER.debug('Reference weights are constant; second term is 0')
        return float(first_term)

    t_hat = float(np.sum(weight_units * yhat_units))
    ratio = t_hat / n_hat_r
    if form == FORM_LINEARIZED:
        spread = (np.sum(yhat_units ** 2) + ratio ** 2 * np.sum(sizes_r ** 2) -
                  2.0 * ratio * np.sum(sizes_r * yhat_units))
    else:
        spread = (np.sum(yhat_units ** 2) + len(yhat_units) * ratio ** 2 -
                  2.0 * np.sum(yhat_units))
    second_term = weight_variance * spread / n_hat_r ** 2
    return float(first_term + second_term)


# vi:sts=4 sw=4 et
