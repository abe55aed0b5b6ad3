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


"""Synthetic finite populations and sampling designs.

    sim1  four skewed covariates built from Bernoulli, uniform, exponential
          and chi-square draws; linear outcome; logistic pi^B; pi^R linear in
          one covariate with a 50:1 max/min ratio
    sim2  bivariate normal (d, x); nonlinear outcome in f_k(x), d^2 and xd
          with f_k one of SIN, EXP, SQR; logistic pi^R in d^2 and pi^B in
          f_k(x)
    sim3  clustered population with cluster-level covariates, a continuous
          and a binary outcome sharing a random cluster effect (ICC 0.2), and
          cluster-level logistic inclusion probabilities

Populations are pandas DataFrames; samples are lists of UnitRecord. Every
random quantity is drawn from a stream derived from the caller's seed.
"""


import collections
import functools
import logging

import numpy as np
import pandas as pd
from scipy import optimize
from scipy import special

from pynonprob import common
from pynonprob import sample as sample_module
from pynonprob import util


_LOGGER = logging.getLogger(__name__)

SIM1 = 'sim1'
SIM2 = 'sim2'
SIM3 = 'sim3'
SCENARIOS = (SIM1, SIM2, SIM3)

FK_SIN = 'SIN'
FK_EXP = 'EXP'
FK_SQR = 'SQR'
FK_NAMES = (FK_SIN, FK_EXP, FK_SQR)

PI_R = 'R'
PI_B = 'B'

OUTCOME_Y = 'y'
OUTCOME_YC = 'yc'
OUTCOME_YB = 'yb'

# Stream keys under the caller's seed.
_STREAM_POPULATION = 0
_STREAM_SAMPLE_R = 1
_STREAM_SAMPLE_B = 2

_PI_RANGE_RATIO = 50.0
_SIM2_OUTCOME_CORRELATION = 0.5
_SIM3_ICC = 0.2
_SIM3_UNIT_VARIANCE = 1.0
_SIM3_PER_CLUSTER_R = 1
_SIM3_PER_CLUSTER_B = 50
_INTERCEPT_BRACKET = 50.0


class CalibrationFailedException(common.NonProbException):
    """An intercept cannot reach the requested probability total."""

    def __init__(self, name, achievable_range=None):
        super(CalibrationFailedException, self).__init__(name)
        self.achievable_range = achievable_range


class ClusterTooSmallException(common.NonProbException):
    """More units were requested per cluster than the cluster holds."""


PopulationTruth = collections.namedtuple(
    'PopulationTruth', ['scenario', 'units', 'true_mean', 'config'])
PopulationTruth.__doc__ = """A synthetic finite population.

units is a DataFrame with columns id, cluster (sim3 only), x_* and d_*
covariates, the outcome column(s), pi_r and pi_b (unit-level inclusion
probabilities) and, for sim3, pi_r_cluster, pi_b_cluster and u. true_mean
maps each outcome column to its population mean.
"""


def calibrate_intercept(linear_part, target):
    """Finds gamma with sum(expit(gamma + linear_part)) == target.

    The total is increasing in gamma; brentq runs on a bracket widened
    until it contains the target.

    Raises:
        CalibrationFailedException: when target is outside (0, N).
    """

    linear_part = np.asarray(linear_part, dtype=float)
    n = len(linear_part)
    if not (0.0 < target < n):
        raise CalibrationFailedException(
            'probability total %g not achievable with %d units' %
            (target, n), achievable_range=(0.0, float(n)))

    def excess(gamma):
        return float(np.sum(special.expit(gamma + linear_part)) - target)

    low = -_INTERCEPT_BRACKET - np.max(linear_part)
    high = _INTERCEPT_BRACKET - np.min(linear_part)
    if excess(low) > 0.0 or excess(high) < 0.0:
        raise CalibrationFailedException(
            'cannot bracket intercept for total %g' % target,
            achievable_range=(excess(low) + target, excess(high) + target))
    return optimize.brentq(excess, low, high, xtol=1e-12)


def _logistic_probabilities(linear_part, target):
    gamma = calibrate_intercept(linear_part, target)
    return special.expit(gamma + linear_part), gamma


def _noise_sigma(signal, correlation):
    """sigma such that corr(signal + sigma * eps, signal) is correlation,
    from the realized variance of the signal."""

    return float(np.sqrt(np.var(signal) * (1.0 - correlation ** 2) /
                         correlation ** 2))


def _check_common(N, rho, allow_zero=False):
    if N < 1000:
        raise ValueError('population size must be at least 1000')
    if not (0.0 <= rho < 1.0) or (rho == 0.0 and not allow_zero):
        raise ValueError('rho %g out of range' % rho)


def gen_sim1(N, rho, seed, n_r=100, n_b=1000):
    """Generates a sim1 population.

    Args:
        N: population size.
        rho: correlation between y and the sum of the covariates.
        seed: top-level seed.
        n_r, n_b: expected reference and non-probability sample sizes.

    Raises:
        CalibrationFailedException: when an intercept cannot be calibrated.
    """

    _check_common(N, rho)
    rng = util.derive_rng(seed, _STREAM_POPULATION)
    z1 = rng.binomial(1, 0.5, N).astype(float)
    z2 = rng.uniform(0.0, 2.0, N)
    z3 = rng.exponential(1.0, N)
    z4 = rng.chisquare(4, N)
    x1 = z1
    x2 = z2 + 0.3 * x1
    x3 = z3 + 0.2 * (x1 + x2)
    x4 = z4 + 0.1 * (x1 + x2 + x3)
    total = x1 + x2 + x3 + x4
    sigma = _noise_sigma(total, rho)
    y = 2.0 + total + sigma * rng.standard_normal(N)

    pi_b, gamma_b = _logistic_probabilities(
        0.1 * x1 + 0.2 * x2 + 0.1 * x3 + 0.2 * x4, n_b)
    gamma_r = (z3.max() - _PI_RANGE_RATIO * z3.min()) / (_PI_RANGE_RATIO -
                                                         1.0)
    size = gamma_r + z3
    pi_r = np.clip(n_r * size / size.sum(), common.PROBABILITY_CLIP,
                   1.0 - common.PROBABILITY_CLIP)

    units = pd.DataFrame({'id': np.arange(N), 'x_1': x1, 'x_2': x2,
                          'x_3': x3, 'x_4': x4, 'y': y, 'pi_r': pi_r,
                          'pi_b': pi_b})
    _LOGGER.debug('sim1: N=%d rho=%g sigma=%g gamma_b=%g', N, rho, sigma,
                  gamma_b)
    return PopulationTruth(SIM1, units, {OUTCOME_Y: float(y.mean())}, {
        'N': N, 'rho': rho, 'seed': seed, 'n_r': n_r, 'n_b': n_b,
        'sigma': sigma, 'gamma_b': gamma_b, 'gamma_r': gamma_r})


def fk(name, x):
    """The sim2 nonlinear covariate function."""

    if name == FK_SIN:
        return np.sin(x)
    if name == FK_EXP:
        return np.exp(x / 2.0)
    if name == FK_SQR:
        return x ** 2 / 3.0
    raise ValueError('unknown fk %r; expected one of %s' %
                     (name, ', '.join(FK_NAMES)))


def gen_sim2(N, rho, fk_name, seed, n_r=100, n_b=1000):
    """Generates a sim2 population.

    Args:
        N: population size.
        rho: correlation of the design variable d and the covariate x.
        fk_name: FK_SIN, FK_EXP or FK_SQR.
        seed: top-level seed.
        n_r, n_b: expected reference and non-probability sample sizes.
    """

    _check_common(N, rho, allow_zero=True)
    rng = util.derive_rng(seed, _STREAM_POPULATION)
    covariance = np.array([[1.0, rho], [rho, 1.0]])
    d, x = rng.multivariate_normal(np.zeros(2), covariance, size=N).T
    f = fk(fk_name, x)
    signal = 2.0 * f - d ** 2 + 0.5 * x * d
    sigma = _noise_sigma(signal, _SIM2_OUTCOME_CORRELATION)
    y = signal + sigma * rng.standard_normal(N)
    pi_r, gamma_r = _logistic_probabilities(0.2 * d ** 2, n_r)
    pi_b, gamma_b = _logistic_probabilities(f, n_b)

    units = pd.DataFrame({'id': np.arange(N), 'x_1': x, 'd_1': d, 'y': y,
                          'pi_r': pi_r, 'pi_b': pi_b})
    _LOGGER.debug('sim2: N=%d rho=%g fk=%s sigma=%g', N, rho, fk_name,
                  sigma)
    return PopulationTruth(SIM2, units, {OUTCOME_Y: float(y.mean())}, {
        'N': N, 'rho': rho, 'fk': fk_name, 'seed': seed, 'n_r': n_r,
        'n_b': n_b, 'sigma': sigma, 'gamma_r': gamma_r,
        'gamma_b': gamma_b})


def gen_sim3(A, n_alpha, rho, seed, n_r=100, n_b=10000):
    """Generates a clustered sim3 population of A clusters of n_alpha units.

    Covariates and inclusion probabilities are cluster level; the unit
    pi_r and pi_b are the two-stage probabilities pi_cluster * k / n_alpha
    for k = 1 (S_R) and k = 50 (S_B) units drawn per selected cluster.

    Args:
        A: number of clusters, at least 10.
        n_alpha: cluster size, at least 2.
        rho: correlation parameter of the cluster covariates.
        seed: top-level seed.
        n_r: expected number of S_R clusters.
        n_b: expected number of S_B units; n_b / 50 clusters.
    """

    if A < 10:
        raise ValueError('sim3 needs at least 10 clusters')
    if n_alpha < 2:
        raise ValueError('sim3 clusters need at least 2 units')
    if not (0.0 <= rho < 1.0):
        raise ValueError('rho must lie in [0, 1)')
    per_cluster_b = min(_SIM3_PER_CLUSTER_B, n_alpha)
    rng = util.derive_rng(seed, _STREAM_POPULATION)
    covariance = np.array([[1.0, -rho / 2.0, rho],
                           [-rho / 2.0, 1.0, -rho / 2.0],
                           [rho, -rho / 2.0, 1.0]])
    d, x0, x1 = rng.multivariate_normal([0.0, 0.0, 1.0], covariance,
                                        size=A).T
    x2 = (x0 > 0.0).astype(float)
    systematic = (1.0 + 0.5 * x1 ** 2 + 0.4 * x1 ** 3 - 0.3 * x2 -
                  0.2 * x1 * x2 - 0.1 * d)
    sigma_u2, sigma_e2 = _sim3_variances(systematic)
    u = rng.normal(0.0, np.sqrt(sigma_u2), A)

    pi_r_cluster, gamma_r = _logistic_probabilities(0.5 * d, n_r)
    pi_b_cluster, gamma_b = _logistic_probabilities(
        -0.1 * x1 + 0.2 * x1 ** 2 + 0.3 * x2 - 0.4 * x1 * x2,
        float(n_b) / per_cluster_b)

    cluster = np.repeat(np.arange(A), n_alpha)
    mean_c = systematic + u
    eta_b = (-1.0 + 0.1 * x1 ** 2 + 0.2 * x1 ** 3 - 0.3 * x2 -
             0.4 * x1 * x2 - 0.5 * d + u)
    n = A * n_alpha
    yc = mean_c[cluster] + np.sqrt(sigma_e2) * rng.standard_normal(n)
    yb = rng.binomial(1, special.expit(eta_b[cluster])).astype(float)

    units = pd.DataFrame({
        'id': np.arange(n), 'cluster': cluster, 'x_1': x1[cluster],
        'x_2': x2[cluster], 'd_1': d[cluster], 'yc': yc, 'yb': yb,
        'u': u[cluster],
        'pi_r_cluster': pi_r_cluster[cluster],
        'pi_b_cluster': pi_b_cluster[cluster],
        'pi_r': pi_r_cluster[cluster] * _SIM3_PER_CLUSTER_R / n_alpha,
        'pi_b': pi_b_cluster[cluster] * per_cluster_b / n_alpha})
    _LOGGER.debug('sim3: A=%d n_alpha=%d rho=%g', A, n_alpha, rho)
    return PopulationTruth(SIM3, units, {OUTCOME_YC: float(yc.mean()),
                                         OUTCOME_YB: float(yb.mean())}, {
        'A': A, 'n_alpha': n_alpha, 'N': n, 'rho': rho, 'seed': seed,
        'n_r': n_r, 'n_b': n_b, 'sigma_u2': sigma_u2, 'sigma_e2': sigma_e2,
        'gamma_r': gamma_r, 'gamma_b': gamma_b})


def _sim3_variances(systematic):
    """Returns (sigma_u2, sigma_e2) giving y_c an intraclass correlation of
    _SIM3_ICC.

    The between-cluster variance of y_c is the variance of the systematic
    cluster mean plus sigma_u2. sigma_u2 keeps its share of the unit
    variance and sigma_e2 is scaled so that the between-cluster part is
    _SIM3_ICC of the total.
    """

    sigma_u2 = _SIM3_ICC * _SIM3_UNIT_VARIANCE / (1.0 - _SIM3_ICC)
    between = float(np.var(systematic)) + sigma_u2
    sigma_e2 = between * (1.0 - _SIM3_ICC) / _SIM3_ICC
    return sigma_u2, sigma_e2


def _covariate_columns(units, prefix):
    return [column for column in units.columns if column.startswith(prefix)]


def _to_records(units, rows, pi_field, outcome, pi_r_known, cluster_labels):
    x_columns = _covariate_columns(units, 'x_')
    d_columns = _covariate_columns(units, 'd_')
    chosen = units.iloc[rows]
    x = chosen[x_columns].to_numpy()
    d = chosen[d_columns].to_numpy() if d_columns else None
    z = common.Z_REFERENCE if pi_field == PI_R else common.Z_NONPROB
    carry_pi_r = pi_field == PI_R or pi_r_known
    records = []
    for position, (record_id, y, pi_r) in enumerate(zip(
            chosen['id'].to_numpy(), chosen[outcome].to_numpy(),
            chosen['pi_r'].to_numpy())):
        records.append(sample_module.UnitRecord(
            '%s%d' % (pi_field, record_id), x[position], z, y=y,
            pi_r=pi_r if carry_pi_r else None,
            d=d[position] if d is not None else None,
            cluster_id=None if cluster_labels is None
            else cluster_labels[position]))
    return records


def _default_outcome(population):
    return OUTCOME_YC if population.scenario == SIM3 else OUTCOME_Y


def _pi_column(pi_field):
    if pi_field not in (PI_R, PI_B):
        raise ValueError('pi_field must be %r or %r' % (PI_R, PI_B))
    return 'pi_r' if pi_field == PI_R else 'pi_b'


def poisson_sample(population, pi_field, seed, outcome=None,
                   pi_r_known=True):
    """Poisson sample with unit inclusion probabilities pi_r or pi_b.

    Record ids are the population ids prefixed by the sample letter, so the
    two samples stay disjoint even when a unit is drawn by both.

    Args:
        population: PopulationTruth.
        pi_field: PI_R (records get z=0) or PI_B (z=1).
        seed: top-level seed; the two samples use separate streams.
        outcome: outcome column; y for sim1/sim2, yc for sim3 by default.
        pi_r_known: whether S_B records carry their pi_r.
    """

    column = _pi_column(pi_field)
    outcome = outcome or _default_outcome(population)
    units = population.units
    rng = util.derive_rng(seed, _STREAM_SAMPLE_R if pi_field == PI_R
                          else _STREAM_SAMPLE_B)
    selected = rng.random(len(units)) < units[column].to_numpy()
    rows = np.flatnonzero(selected)
    return _to_records(units, rows, pi_field, outcome, pi_r_known, None)


def two_stage_cluster_sample(population, pi_field, per_cluster_n, seed,
                             outcome=None, pi_r_known=True):
    """Poisson selection of clusters on the cluster-level probabilities,
    then simple random sampling without replacement of per_cluster_n units
    in each selected cluster.

    Raises:
        ClusterTooSmallException: when per_cluster_n exceeds a cluster size.
    """

    column = _pi_column(pi_field) + '_cluster'
    units = population.units
    if 'cluster' not in units.columns or column not in units.columns:
        raise ValueError('population is not clustered')
    outcome = outcome or _default_outcome(population)
    clusters = units.groupby('cluster', sort=True)
    sizes = clusters.size()
    if per_cluster_n < 1 or per_cluster_n > sizes.min():
        raise ClusterTooSmallException(
            'cannot draw %d units from clusters of size %d' %
            (per_cluster_n, sizes.min()))
    cluster_pi = clusters[column].first()
    rng = util.derive_rng(seed, _STREAM_SAMPLE_R if pi_field == PI_R
                          else _STREAM_SAMPLE_B)
    selected = cluster_pi.index[rng.random(len(cluster_pi)) <
                                cluster_pi.to_numpy()]
    positions = clusters.indices
    rows = []
    labels = []
    for cluster_id in selected:
        members = positions[cluster_id]
        chosen = rng.choice(members, size=per_cluster_n, replace=False)
        rows.extend(sorted(chosen))
        labels.extend(['%s:%d' % (pi_field, cluster_id)] * per_cluster_n)
    return _to_records(units, np.asarray(rows, dtype=int), pi_field, outcome,
                       pi_r_known, labels)


def draw_samples(population, seed, outcome=None, pi_r_known=True):
    """Draws (S_R, S_B) with the scenario's design."""

    if population.scenario == SIM3:
        return (two_stage_cluster_sample(population, PI_R,
                                         _SIM3_PER_CLUSTER_R, seed, outcome,
                                         pi_r_known),
                two_stage_cluster_sample(
                    population, PI_B,
                    min(_SIM3_PER_CLUSTER_B, population.config['n_alpha']),
                    seed, outcome, pi_r_known))
    return (poisson_sample(population, PI_R, seed, outcome, pi_r_known),
            poisson_sample(population, PI_B, seed, outcome, pi_r_known))


def to_combined(population, s_r, s_b, outcome=None):
    """Builds the CombinedSample with y removed from S_R.

    Returns:
        (CombinedSample, realized S_R outcomes) the latter kept for the
        benchmark rows.
    """

    outcome = outcome or _default_outcome(population)
    y_r = np.array([record.y for record in s_r], dtype=float)
    stripped = [record._replace(y=None) for record in s_r]
    units = population.units
    kind = common.OUTCOME_BINARY if outcome == OUTCOME_YB else \
        common.OUTCOME_CONTINUOUS
    combined = sample_module.build_combined(
        stripped, s_b, population_size=len(units), outcome_kind=kind,
        x_names=_covariate_columns(units, 'x_'),
        d_names=_covariate_columns(units, 'd_') or None)
    return combined, y_r


def export_csv(records, path, x_names=None, d_names=None):
    """Writes records in the CSV ingestion layout: id, cluster, y, pi_r, z,
    then x_* and d_* columns; absent fields are empty cells."""

    records = list(records)
    if not records:
        raise ValueError('no records to export')
    p = len(records[0].x)
    x_names = list(x_names or ['x_%d' % (j + 1) for j in range(p)])
    q = max(len(record.d) if record.d is not None else 0
            for record in records)
    d_names = list(d_names or ['d_%d' % (j + 1) for j in range(q)])
    rows = []
    for record in records:
        row = collections.OrderedDict([
            ('id', record.id), ('cluster', record.cluster_id),
            ('y', record.y), ('pi_r', record.pi_r), ('z', record.z)])
        for name, value in zip(x_names, record.x):
            row[name] = value
        for j, name in enumerate(d_names):
            row[name] = record.d[j] if record.d is not None else None
        rows.append(row)
    frame = pd.DataFrame(rows, columns=['id', 'cluster', 'y', 'pi_r', 'z'] +
                         x_names + d_names)
    frame.to_csv(path, index=False, float_format='%.17g')


# Working-model feature maps. Each maps raw (x, d) columns to a design
# without intercept; module-level so they pickle into worker processes.


def _columns(x, d, x_index=None, with_d=False):
    parts = [x if x_index is None else x[:, x_index]]
    if with_d:
        parts.append(d)
    return np.column_stack(parts)


def _sim2_true_qr(x, d, fk_name):
    return np.column_stack([fk(fk_name, x[:, 0]), d[:, 0] ** 2])


def _sim2_true_qr_x(x, d, fk_name):
    return fk(fk_name, x[:, 0]).reshape(-1, 1)


def _sim2_true_pm(x, d, fk_name):
    return np.column_stack([fk(fk_name, x[:, 0]), d[:, 0] ** 2,
                            x[:, 0] * d[:, 0]])


def _square_of_d(x, d):
    return (d[:, 0] ** 2).reshape(-1, 1)


def _sim3_selection_terms(x):
    x1, x2 = x[:, 0], x[:, 1]
    return [x1, x1 ** 2, x2, x1 * x2]


def _sim3_true_qr(x, d):
    return np.column_stack(_sim3_selection_terms(x) + [d[:, 0]])


def _sim3_true_qr_x(x, d):
    return np.column_stack(_sim3_selection_terms(x))


def _sim3_true_pm(x, d):
    x1, x2 = x[:, 0], x[:, 1]
    return np.column_stack([x1 ** 2, x1 ** 3, x2, x1 * x2, d[:, 0]])


def _design_d(x, d):
    return np.asarray(d)


WorkingModels = collections.namedtuple(
    'WorkingModels', ['qr', 'qr_x', 'pir', 'pm'])
WorkingModels.__doc__ = """Feature maps (x, d) -> matrix for one model spec.

qr models P(Z=1|x*) for PAPW; qr_x models P(Z=1|x) for PAPP and the IPSW
propensity; pir models E(pi^R|x) for PAPP; pm is the outcome model.
"""


def working_models(scenario, correct, fk_name=None):
    """Correct or misspecified working-model features of a scenario.

    A misspecified model drops x_4 in sim1 and keeps only main effects in
    sim2 and sim3.
    """

    if scenario == SIM1:
        if correct:
            full = functools.partial(_columns, x_index=None)
            return WorkingModels(full, full, full, full)
        reduced = functools.partial(_columns, x_index=[0, 1, 2])
        return WorkingModels(reduced, reduced, reduced, reduced)
    if scenario == SIM2:
        if correct:
            return WorkingModels(
                functools.partial(_sim2_true_qr, fk_name=fk_name),
                functools.partial(_sim2_true_qr_x, fk_name=fk_name),
                _square_of_d,
                functools.partial(_sim2_true_pm, fk_name=fk_name))
        main = functools.partial(_columns, with_d=True)
        x_only = functools.partial(_columns, x_index=None)
        return WorkingModels(main, x_only, main, main)
    if scenario == SIM3:
        if correct:
            return WorkingModels(_sim3_true_qr, _sim3_true_qr_x, _design_d,
                                 _sim3_true_pm)
        main = functools.partial(_columns, with_d=True)
        x_only = functools.partial(_columns, x_index=None)
        return WorkingModels(main, x_only, main, main)
    raise ValueError('unknown scenario %r; expected one of %s' %
                     (scenario, ', '.join(SCENARIOS)))


def generate(scenario, seed, rho, N=None, fk_name=None, A=None,
             n_alpha=None, n_r=100, n_b=None):
    """Generates a population of the named scenario with its defaults."""

    if scenario == SIM1:
        return gen_sim1(N or 10 ** 6, rho, seed, n_r, n_b or 1000)
    if scenario == SIM2:
        return gen_sim2(N or 10 ** 6, rho, fk_name or FK_SIN, seed, n_r,
                        n_b or 1000)
    if scenario == SIM3:
        return gen_sim3(A or 1000, n_alpha or 1000, rho, seed, n_r,
                        n_b or 10000)
    raise ValueError('unknown scenario %r; expected one of %s' %
                     (scenario, ', '.join(SCENARIOS)))


# vi:sts=4 sw=4 et
