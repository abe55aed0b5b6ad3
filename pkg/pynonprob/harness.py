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


"""Repeated-sampling experiments and their metrics.

Replication k of a scenario draws its population and samples from streams
derived from (seed, k), runs every requested method under every model
specification, and records (point, variance, truth). Metrics per
(method, spec) cell:

    rBias  100 * mean(point - truth) / truth
    rMSE   100 * sqrt(mean((point - truth)^2)) / truth
    crCI   100 * share of |point - truth| < z_{0.975} * se
    rSE    mean(se) / sd(point), sd with K - 1 denominator
"""


import collections
import concurrent.futures
import json
import logging

import numpy as np
import pandas as pd

from pynonprob import aipw
from pynonprob import common
from pynonprob import dispatch
from pynonprob import simulation
from pynonprob import util


_LOGGER = logging.getLogger(__name__)

APPROACH_BOOTSTRAP = 'bootstrap'
HARNESS_APPROACHES = dispatch.APPROACHES + (APPROACH_BOOTSTRAP,)

SPECS = ('TT', 'TF', 'FT', 'FF')

BASELINE_UNWEIGHTED_B = 'UNWEIGHTED-SB'
BASELINE_UNWEIGHTED_R = 'UNWEIGHTED-SR'
BASELINE_TRUE_B = 'TRUE-SB'
BASELINE_TRUE_R = 'TRUE-SR'
BASELINES = (BASELINE_UNWEIGHTED_B, BASELINE_UNWEIGHTED_R, BASELINE_TRUE_B,
             BASELINE_TRUE_R)

DEFAULT_METHODS = {
    dispatch.APPROACH_FREQUENTIST: BASELINES + (
        'PAPW', 'IPSW', 'PM', 'AIPW-PAPW', 'AIPW-IPSW'),
    dispatch.APPROACH_BAYES: ('PAPW', 'PAPP', 'PM', 'AIPW-PAPW',
                              'AIPW-PAPP'),
    dispatch.APPROACH_BART: ('BART-PAPW', 'BART-PAPP', 'BART-PM',
                             'BART-AIPW-PAPW', 'BART-AIPW-PAPP'),
    APPROACH_BOOTSTRAP: ('PAPW', 'PAPP', 'PM', 'AIPW-PAPW', 'AIPW-PAPP'),
}

CSV_COLUMNS = ['method', 'spec', 'rbias', 'rmse', 'crci', 'rse', 'k_eff']

# Replication stream keys under the top-level seed.
_STREAM_POPULATION = 0
_STREAM_SAMPLES = 1
_STREAM_ESTIMATION = 2
_FIXED_POPULATION_KEY = 0


class ConfigException(common.NonProbException):
    """A run configuration value is invalid; names the field."""

    def __init__(self, name, field=None):
        super(ConfigException, self).__init__(name)
        self.field = field


class ZeroTruthException(common.NonProbException):
    """Relative metrics are undefined for a zero population mean."""


MetricsSummary = collections.namedtuple(
    'MetricsSummary', ['method', 'spec', 'k_effective', 'rbias_pct',
                       'rmse_pct', 'crci_pct', 'rse', 'truth', 'aborted'])


def compute_metrics(points, variances, truth, method='', spec=''):
    """Computes rBias, rMSE, crCI and rSE over K replications.

    Args:
        points: K point estimates.
        variances: K variance estimates; NaN variances never cover.
        truth: population mean, a scalar or one value per replication; the
               relative metrics divide by its mean.

    Raises:
        LengthMismatchException: when points and variances differ in length.
        ZeroTruthException: when the truth is zero.
    """

    points = util.as_vector(points, 'points')
    variances = util.as_vector(variances, 'variances')
    util.check_same_length('compute_metrics', points, variances)
    truth = np.broadcast_to(np.asarray(truth, dtype=float), points.shape)
    reference = float(np.mean(truth)) if len(truth) else 0.0
    if reference == 0.0:
        raise ZeroTruthException('relative metrics need a non-zero truth')
    error = points - truth
    se = np.sqrt(np.where(variances >= 0.0, variances, np.nan))
    with np.errstate(invalid='ignore'):
        covered = np.abs(error) < common.Z_975 * se
    rse = np.nan
    if len(points) > 1 and np.any(~np.isnan(se)):
        spread = float(np.std(points, ddof=1))
        if spread > 0.0:
            rse = float(np.nanmean(se)) / spread
    return MetricsSummary(
        method, spec, len(points),
        100.0 * float(np.mean(error)) / reference,
        100.0 * float(np.sqrt(np.mean(error ** 2))) / reference,
        100.0 * float(np.mean(covered)), rse, reference, False)


_ScenarioConfigBase = collections.namedtuple(
    '_ScenarioConfigBase',
    ['scenario', 'rho', 'fk', 'population_size', 'clusters', 'cluster_size',
     'n_r', 'n_b', 'approach', 'methods', 'specs', 'outcome', 'M', 'burn_in',
     'n_kept', 'B', 'fixed_population', 'normalization', 'joint'])


class ScenarioConfig(_ScenarioConfigBase):
    """One simulation experiment. Immutable; validated on construction.

    Raises:
        ConfigException: naming the offending field.
    """

    __slots__ = ()

    def __new__(cls, scenario=simulation.SIM1, rho=0.5,
                fk=simulation.FK_SIN, population_size=None, clusters=None,
                cluster_size=None, n_r=100, n_b=None,
                approach=dispatch.APPROACH_FREQUENTIST, methods=None,
                specs=SPECS, outcome=None, M=common.DEFAULT_M,
                burn_in=common.DEFAULT_BURN_IN,
                n_kept=common.DEFAULT_KEPT_DRAWS,
                B=common.DEFAULT_BOOTSTRAP_B, fixed_population=False,
                normalization=common.NORMALIZATION_HAJEK, joint=False):
        if scenario not in simulation.SCENARIOS:
            raise ConfigException(
                'unknown scenario %r; valid scenarios: %s' %
                (scenario, ', '.join(simulation.SCENARIOS)), field='scenario')
        if approach not in HARNESS_APPROACHES:
            raise ConfigException(
                'unknown approach %r; valid approaches: %s' %
                (approach, ', '.join(HARNESS_APPROACHES)), field='approach')
        if fk not in simulation.FK_NAMES:
            raise ConfigException('unknown fk %r' % fk, field='fk')
        if not 0.0 <= rho < 1.0:
            raise ConfigException('rho must lie in [0, 1)', field='rho')
        if scenario == simulation.SIM1 and rho == 0.0:
            raise ConfigException('sim1 needs rho in (0, 1)', field='rho')
        specs = tuple(spec.upper() for spec in specs)
        for spec in specs:
            if spec not in SPECS:
                raise ConfigException('unknown spec %r' % spec,
                                      field='specs')
        if methods is None:
            methods = DEFAULT_METHODS[approach]
        methods = tuple(method.upper() for method in methods)
        for method in methods:
            if method in BASELINES:
                continue
            try:
                dispatch.parse_method(method)
            except dispatch.DispatchException as e:
                raise ConfigException(str(e), field='methods')
        valid_outcomes = (simulation.OUTCOME_YC, simulation.OUTCOME_YB) \
            if scenario == simulation.SIM3 else (simulation.OUTCOME_Y,)
        if outcome is None:
            outcome = valid_outcomes[0]
        if outcome not in valid_outcomes:
            raise ConfigException('outcome %r not available for %s' %
                                  (outcome, scenario), field='outcome')
        for name, value in (('M', M), ('n_kept', n_kept), ('B', B),
                            ('n_r', n_r)):
            if int(value) < 1:
                raise ConfigException('%s must be positive' % name,
                                      field=name)
        if M > n_kept:
            raise ConfigException('M cannot exceed the kept draws',
                                  field='M')
        return super(ScenarioConfig, cls).__new__(
            cls, scenario, float(rho), fk, population_size, clusters,
            cluster_size, int(n_r), n_b, approach, methods, specs, outcome,
            int(M), int(burn_in), int(n_kept), int(B),
            bool(fixed_population), normalization, bool(joint))

    def estimate_options(self, seed, models):
        approach = self.approach
        variance_name = dispatch.VARIANCE_DEFAULT
        if approach == APPROACH_BOOTSTRAP:
            approach = dispatch.APPROACH_FREQUENTIST
            variance_name = dispatch.VARIANCE_BOOTSTRAP
        return dispatch.EstimateOptions(
            approach=approach, variance=variance_name,
            normalization=self.normalization, M=self.M,
            burn_in=self.burn_in, n_kept=self.n_kept, B=self.B, seed=seed,
            joint=self.joint, models=models)

    def to_json(self):
        return dict(self._asdict(), methods=list(self.methods),
                    specs=list(self.specs))


def _cells(config):
    """(method, spec label, qr correct, pm correct) for every table cell.

    Quasi-randomization methods depend only on the QR letter and PM only on
    the PM letter; baselines use no model.
    """

    cells = []
    for method in config.methods:
        if method in BASELINES:
            cells.append((method, '--', True, True))
            continue
        base = dispatch.parse_method(method)[1]
        if base.startswith('AIPW'):
            labels = [(spec, spec) for spec in config.specs]
        elif base == dispatch.METHOD_PM:
            labels = [('-' + letter, 'T' + letter) for letter in
                      sorted(set(spec[1] for spec in config.specs),
                             reverse=True)]
        else:
            labels = [(letter + '-', letter + 'T') for letter in
                      sorted(set(spec[0] for spec in config.specs),
                             reverse=True)]
        for label, spec in labels:
            cells.append((method, label, spec[0] == 'T', spec[1] == 'T'))
    return cells


def _models(config, qr_correct, pm_correct):
    qr = simulation.working_models(config.scenario, qr_correct, config.fk)
    pm = simulation.working_models(config.scenario, pm_correct, config.fk)
    return simulation.WorkingModels(qr.qr, qr.qr_x, qr.pir, pm.pm)


def _population(config, seed, k):
    key = _FIXED_POPULATION_KEY if config.fixed_population else k
    return simulation.generate(
        config.scenario, util.derive_int_seed(seed, _STREAM_POPULATION, key),
        config.rho, N=config.population_size, fk_name=config.fk,
        A=config.clusters, n_alpha=config.cluster_size, n_r=config.n_r,
        n_b=config.n_b)


def _population_rows(population, records):
    return np.array([int(str(record.id)[1:]) for record in records])


def _baseline(method, combined, y_r, population, s_r, s_b):
    units = population.units
    if method == BASELINE_UNWEIGHTED_B:
        return aipw.baseline_report(method, combined.y_b)
    if method == BASELINE_UNWEIGHTED_R:
        return aipw.baseline_report(method, y_r)
    if method == BASELINE_TRUE_B:
        pi_b = units['pi_b'].to_numpy()[_population_rows(population, s_b)]
        return aipw.baseline_report(method, combined.y_b, pi_b)
    return aipw.baseline_report(method, y_r, combined.pi_r_r)


_FAILURES = (common.NonProbException, ArithmeticError, ValueError,
             np.linalg.LinAlgError)


def run_replication(config, seed, k):
    """Runs replication k; returns (truth, {(method, spec): result}) where
    result is (point, variance) or the failure message."""

    population = _population(config, seed, k)
    truth = population.true_mean[config.outcome]
    s_r, s_b = simulation.draw_samples(
        population, util.derive_int_seed(seed, _STREAM_SAMPLES, k),
        config.outcome)
    combined, y_r = simulation.to_combined(population, s_r, s_b,
                                           config.outcome)
    estimation_seed = util.derive_int_seed(seed, _STREAM_ESTIMATION, k)
    dispatcher = dispatch.Dispatcher()
    contexts = {}
    results = collections.OrderedDict()
    for method, label, qr_correct, pm_correct in _cells(config):
        try:
            if method in BASELINES:
                report = _baseline(method, combined, y_r, population, s_r,
                                   s_b)
            else:
                key = (qr_correct, pm_correct)
                if key not in contexts:
                    contexts[key] = dispatch.EstimationContext(
                        combined, config.estimate_options(
                            estimation_seed, _models(config, *key)))
                report = dispatcher.estimate(contexts[key], method).report
            results[(method, label)] = (report.point, report.se ** 2)
        except _FAILURES as e:
            _LOGGER.log(common.LOGLEVEL_FINE,
                        'Replication %d %s %s failed: %s', k, method, label,
                        e)
            results[(method, label)] = str(e)
    return truth, results


def _run_one(arguments):
    config, seed, k = arguments
    return run_replication(config, seed, k)


HarnessResult = collections.namedtuple(
    'HarnessResult', ['config', 'K', 'seed', 'rows', 'aborted'])


def run_replications(config, K, seed, jobs=1):
    """Runs K replications and summarizes every cell.

    Output does not depend on jobs: replication k always uses the streams of
    (seed, k) and results are aggregated in k order.

    Returns:
        HarnessResult whose aborted lists the cells with more than 10%
        failed replications (emitted with NaN metrics).
    """

    if K < 1:
        raise ConfigException('K must be positive', field='k')
    arguments = [(config, seed, k) for k in range(K)]
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as \
                executor:
            replications = list(executor.map(_run_one, arguments))
    else:
        replications = [_run_one(argument) for argument in arguments]

    rows = []
    aborted = []
    for method, label, _, _ in _cells(config):
        points, variances, truths = [], [], []
        failures = 0
        for truth, results in replications:
            result = results[(method, label)]
            if isinstance(result, str):
                failures += 1
                continue
            points.append(result[0])
            variances.append(result[1])
            truths.append(truth)
        if failures > common.HARNESS_MAX_FAILURE_FRACTION * K or \
                not points:
            _LOGGER.warning('Cell %s %s aborted: %d of %d replications '
                            'failed', method, label, failures, K)
            aborted.append((method, label))
            rows.append(MetricsSummary(method, label, len(points), np.nan,
                                       np.nan, np.nan, np.nan,
                                       float(np.mean([t for t, _ in
                                                      replications])),
                                       True))
            continue
        rows.append(compute_metrics(points, variances, truths, method,
                                    label))
    return HarnessResult(config, K, seed, rows, aborted)


def metrics_frame(rows):
    return pd.DataFrame(
        [(row.method, row.spec, row.rbias_pct, row.rmse_pct, row.crci_pct,
          row.rse, row.k_effective) for row in rows], columns=CSV_COLUMNS)


def write_csv(rows, path_or_buffer):
    metrics_frame(rows).to_csv(path_or_buffer, index=False,
                               float_format='%.6f', na_rep='NaN')


def _json_number(value):
    value = float(value)
    return None if np.isnan(value) else round(value, 6)


def result_json(result):
    return {
        'schema_version': common.REPORT_SCHEMA_VERSION,
        'scenario': dict(result.config.to_json(), K=result.K,
                         seed=result.seed),
        'rows': [{'method': row.method, 'spec': row.spec,
                  'rbias': _json_number(row.rbias_pct),
                  'rmse': _json_number(row.rmse_pct),
                  'crci': _json_number(row.crci_pct),
                  'rse': _json_number(row.rse),
                  'k_eff': row.k_effective,
                  'truth': _json_number(row.truth),
                  'aborted': row.aborted} for row in result.rows],
    }


def write_json(result, path_or_buffer):
    text = json.dumps(result_json(result), indent=2, sort_keys=True) + '\n'
    if hasattr(path_or_buffer, 'write'):
        path_or_buffer.write(text)
        return
    with open(path_or_buffer, 'w') as f:
        f.write(text)


# vi:sts=4 sw=4 et
