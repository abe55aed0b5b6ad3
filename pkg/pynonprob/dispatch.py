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


"""Dispatch an estimation method tag to its pipeline.

A method tag names a base estimator (PM, PAPW, PAPP, IPSW, AIPW-PAPW,
AIPW-PAPP, AIPW-IPSW), optionally prefixed by GLM- or BART-. The approach
selects how the working models are fitted:

    frequentist  maximum likelihood fits, plug-in or jointly solved AIPW
    bayes        Metropolis posterior draws of the GLM working models
    bart         BART posterior draws

Fits are shared by every method run on the same sample through an
EstimationContext.
"""


import collections
import logging

import numpy as np

from pynonprob import aipw
from pynonprob import bart
from pynonprob import common
from pynonprob import glm
from pynonprob import pseudoweight
from pynonprob import sample as sample_module
from pynonprob import util
from pynonprob import variance


APPROACH_FREQUENTIST = 'frequentist'
APPROACH_BAYES = 'bayes'
APPROACH_BART = 'bart'
APPROACHES = (APPROACH_FREQUENTIST, APPROACH_BAYES, APPROACH_BART)

VARIANCE_DEFAULT = 'default'
VARIANCE_NONE = 'none'
VARIANCE_SANDWICH = 'sandwich'
VARIANCE_CHEN = 'chen'
VARIANCE_IPSW = 'ipsw'
VARIANCE_PM = 'pm'
VARIANCE_BOOTSTRAP = 'bootstrap'
VARIANCE_RUBIN = 'rubin'
VARIANCES = (VARIANCE_DEFAULT, VARIANCE_NONE, VARIANCE_SANDWICH,
             VARIANCE_CHEN, VARIANCE_IPSW, VARIANCE_PM, VARIANCE_BOOTSTRAP,
             VARIANCE_RUBIN)

METHOD_PM = 'PM'
METHOD_PAPW = common.QR_PAPW
METHOD_PAPP = common.QR_PAPP
METHOD_IPSW = common.QR_IPSW
METHOD_AIPW_PAPW = 'AIPW-PAPW'
METHOD_AIPW_PAPP = 'AIPW-PAPP'
METHOD_AIPW_IPSW = 'AIPW-IPSW'
METHODS = (METHOD_PM, METHOD_PAPW, METHOD_PAPP, METHOD_IPSW,
           METHOD_AIPW_PAPW, METHOD_AIPW_PAPP, METHOD_AIPW_IPSW)

_MODEL_PREFIXES = ('GLM-', 'BART-')

# Working-model roles; each has its own random stream.
ROLE_QR = 'qr'
ROLE_QR_X = 'qr_x'
ROLE_PIR = 'pir'
ROLE_PM = 'pm'
ROLE_IPSW = 'ipsw'
_ROLE_STREAMS = {ROLE_QR: 11, ROLE_QR_X: 12, ROLE_PIR: 13, ROLE_PM: 14}
_BOOTSTRAP_STREAM = 20


class DispatchException(common.NonProbException):
    """A method tag or method/variance combination is not valid."""

    def __init__(self, name, valid=None):
        super(DispatchException, self).__init__(name)
        self.valid = valid


_EstimateOptionsBase = collections.namedtuple(
    '_EstimateOptionsBase',
    ['approach', 'variance', 'normalization', 'M', 'burn_in', 'n_kept', 'B',
     'seed', 'joint', 'lwp', 'qr_covariates', 'pmle_covariates', 'models',
     'within_form', 'n_trees'])


class EstimateOptions(_EstimateOptionsBase):
    """Settings shared by every method of one estimation run.

    models is an optional simulation.WorkingModels; without it designs are
    the raw covariates selected by qr_covariates (x* by default) and
    pmle_covariates (x by default). n_trees None means the BART defaults.
    """

    __slots__ = ()

    def __new__(cls, approach=APPROACH_FREQUENTIST,
                variance=VARIANCE_DEFAULT,
                normalization=common.NORMALIZATION_HAJEK, M=common.DEFAULT_M,
                burn_in=common.DEFAULT_BURN_IN,
                n_kept=common.DEFAULT_KEPT_DRAWS,
                B=common.DEFAULT_BOOTSTRAP_B, seed=0, joint=False, lwp=False,
                qr_covariates=common.COVARIATES_XSTAR,
                pmle_covariates=common.COVARIATES_X, models=None,
                within_form=variance.FORM_DISPLAYED, n_trees=None):
        if approach not in APPROACHES:
            raise DispatchException('unknown approach %r' % approach,
                                    valid=APPROACHES)
        if variance not in VARIANCES:
            raise DispatchException('unknown variance %r' % variance,
                                    valid=VARIANCES)
        if normalization not in (common.NORMALIZATION_HAJEK,
                                 common.NORMALIZATION_KNOWN_N):
            raise DispatchException('unknown normalization %r' %
                                    normalization)
        if approach != APPROACH_FREQUENTIST and not 1 <= M <= n_kept:
            raise DispatchException('M=%d must lie in [1, %d]' % (M, n_kept))
        return super(EstimateOptions, cls).__new__(
            cls, approach, variance, normalization, int(M), int(burn_in),
            int(n_kept), int(B), int(seed), bool(joint), bool(lwp),
            qr_covariates, pmle_covariates, models, within_form, n_trees)


DispatchResult = collections.namedtuple(
    'DispatchResult', ['report', 'variance', 'pseudo', 'per_draw_points'])


def parse_method(tag):
    """Splits 'GLM-AIPW-PAPW' into ('GLM', 'AIPW-PAPW'); case-insensitive.

    Raises:
        DispatchException: for an unknown base method.
    """

    upper = tag.strip().upper()
    prefix = None
    for candidate in _MODEL_PREFIXES:
        if upper.startswith(candidate):
            prefix = candidate[:-1]
            upper = upper[len(candidate):]
            break
    if upper not in METHODS:
        raise DispatchException('unknown method %r' % tag, valid=METHODS)
    return prefix, upper


def _route(method):
    return method.split('-')[-1]


class EstimationContext(object):
    """Lazily fitted working models of one combined sample."""

    def __init__(self, sample, options):
        self._logger = util.get_class_logger(self)
        self.sample = sample
        self.options = options
        self._cache = {}
        self.bart_fits = {}

    def _cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def _features(self, role):
        models = self.options.models
        if models is None:
            return None
        if role == ROLE_IPSW:
            return models.qr_x
        return getattr(models, role)

    def _selection(self, role):
        if role == ROLE_QR:
            return self.options.qr_covariates
        if role == ROLE_IPSW:
            return self.options.pmle_covariates
        if role in (ROLE_QR_X, ROLE_PIR):
            return common.COVARIATES_X
        return common.COVARIATES_XSTAR

    def design(self, role, intercept=True):
        """Design of a working model over every record."""

        def build():
            if role == ROLE_PM and self.options.lwp:
                design = aipw.lwp_design(self.sample, self._lwp_pir_b())
                return design if intercept else design[:, 1:]
            return sample_module.design_matrix(
                self.sample, self._selection(role), intercept,
                features=self._features(role))
        return self._cached(('design', role, intercept), build)

    def _lwp_pir_b(self):
        if not np.any(np.isnan(self.sample.pi_r[self.sample.b_mask])):
            return None
        return self.pir_b()

    @property
    def outcome_family(self):
        if self.sample.outcome_kind == common.OUTCOME_BINARY:
            return common.FAMILY_LOGISTIC
        return common.FAMILY_LINEAR

    def _seed(self, role):
        return util.derive_int_seed(self.options.seed, _ROLE_STREAMS[role])

    # Frequentist fits.

    def z_fit(self, role):
        return self._cached(('z_fit', role), lambda: glm.fit_logistic(
            self.design(role), self.sample.z.astype(float)))

    def pir_fit(self):
        sample = self.sample
        return self._cached('pir_fit', lambda: glm.fit_beta_regression(
            self.design(ROLE_PIR)[sample.r_mask], sample.pi_r_r))

    def outcome_fit(self):
        sample = self.sample
        return self._cached('outcome_fit', lambda: glm.fit(
            self.outcome_family, self.design(ROLE_PM)[sample.b_mask],
            sample.y_b))

    def pmle_fit(self):
        return self._cached('pmle_fit', lambda: pseudoweight.solve_pmle(
            self.sample, design=self.design(ROLE_IPSW)))

    def pir_b(self):
        """Predicted pi^R on S_B rows from the beta regression."""

        return pseudoweight.predict_mean(
            self.pir_fit(), self.design(ROLE_PIR)[self.sample.b_mask])

    def pseudo_inclusion(self, route):
        sample = self.sample
        b = sample.b_mask

        def build():
            if route == common.QR_PAPW:
                return pseudoweight.papw(sample, self.z_fit(ROLE_QR),
                                         self.design(ROLE_QR)[b])
            if route == common.QR_PAPP:
                return pseudoweight.papp(
                    sample, self.pir_fit(), self.z_fit(ROLE_QR_X),
                    pir_design=self.design(ROLE_PIR)[b],
                    z_design=self.design(ROLE_QR_X)[b])
            return pseudoweight.ipsw(sample, self.pmle_fit(),
                                     design=self.design(ROLE_IPSW))
        return self._cached(('pseudo', route), build)

    def positivity(self):
        p = glm.predict(self.z_fit(ROLE_QR), self.design(ROLE_QR))
        return sample_module.positivity_report(self.sample, p)

    # Posterior draws, M x n on the mean scale.

    def _subsample_rng(self, role):
        return util.derive_rng(self.options.seed, _ROLE_STREAMS[role], 1)

    def _glm_draws(self, role, family, X, response, fit):
        options = self.options
        config = glm.McmcConfig(n_draws=options.n_kept,
                                burn_in=options.burn_in,
                                seed=self._seed(role))
        draws = glm.posterior_sample(family, X, response, config, fit=fit)
        return glm.subsample_draws(draws, options.M,
                                   self._subsample_rng(role))

    def _bart_config(self, role, m):
        options = self.options
        return bart.BartConfig(m=options.n_trees or m,
                               n_draws=options.n_kept,
                               burn_in=options.burn_in,
                               seed=self._seed(role))

    def _bart(self, fit, role):
        self.bart_fits[role] = fit
        return bart.subsample_states(fit, self.options.M,
                                     self._subsample_rng(role))

    def z_draws(self, role):
        """Draws of P(Z=1|.) for every record."""

        def build():
            sample = self.sample
            z = sample.z.astype(float)
            if self.options.approach == APPROACH_BART:
                X = self.design(role, intercept=False)
                fit = bart.bart_fit_probit(
                    X, z, self._bart_config(role, bart.DEFAULT_TREES_PROBIT))
                return bart.bart_predict(self._bart(fit, role), X)
            X = self.design(role)
            draws = self._glm_draws(role, common.FAMILY_LOGISTIC, X, z,
                                    self.z_fit(role))
            return glm.predict(draws, X)
        return self._cached(('z_draws', role), build)

    def pir_draws(self):
        """Draws of E(pi^R|x) on S_B rows."""

        def build():
            sample = self.sample
            if self.options.approach == APPROACH_BART:
                X = self.design(ROLE_PIR, intercept=False)
                fit = bart.bart_fit_logit_target(
                    X[sample.r_mask], sample.pi_r_r,
                    self._bart_config(ROLE_PIR,
                                      bart.DEFAULT_TREES_CONTINUOUS))
                return bart.bart_predict(self._bart(fit, ROLE_PIR),
                                         X[sample.b_mask])
            X = self.design(ROLE_PIR)
            draws = self._glm_draws(ROLE_PIR, common.FAMILY_BETA,
                                    X[sample.r_mask], sample.pi_r_r,
                                    self.pir_fit())
            return glm.predict(draws, X[sample.b_mask])
        return self._cached('pir_draws', build)

    def outcome_draws(self):
        """Draws of E(y|x*) for every record."""

        def build():
            sample = self.sample
            b = sample.b_mask
            if self.options.approach == APPROACH_BART:
                X = self.design(ROLE_PM, intercept=False)
                if self.outcome_family == common.FAMILY_LOGISTIC:
                    fit = bart.bart_fit_probit(
                        X[b], sample.y_b,
                        self._bart_config(ROLE_PM,
                                          bart.DEFAULT_TREES_PROBIT))
                else:
                    fit = bart.bart_fit_continuous(
                        X[b], sample.y_b,
                        self._bart_config(ROLE_PM,
                                          bart.DEFAULT_TREES_CONTINUOUS))
                return bart.bart_predict(self._bart(fit, ROLE_PM), X)
            X = self.design(ROLE_PM)
            draws = self._glm_draws(ROLE_PM, self.outcome_family, X[b],
                                    sample.y_b, self.outcome_fit())
            return glm.predict(draws, X)
        return self._cached('outcome_draws', build)

    def pib_draws(self, route):
        """Draws of pi^B on S_B rows; the PAPP route pairs pi^R draws with
        propensity draws."""

        def build():
            b = self.sample.b_mask
            if route == common.QR_PAPW:
                p = self.z_draws(ROLE_QR)[:, b]
                pir = self.sample.pi_r_b[np.newaxis, :]
            elif route == common.QR_PAPP:
                p = self.z_draws(ROLE_QR_X)[:, b]
                pir = self.pir_draws()
            else:
                raise DispatchException(
                    'IPSW has no posterior draws; use the frequentist '
                    'approach')
            values = pir * (p / (1.0 - p))
            if not np.all((values > 0.0) & (values < 1.0)):
                raise pseudoweight.OutOfRangeException(
                    '%s pseudo-inclusion draws outside (0, 1)' % route)
            return values
        return self._cached(('pib_draws', route), build)


def _rubin(points, within):
    if len(points) >= 2:
        return variance.rubin_combine(points, within)
    return variance.VarianceReport('rubin', float(within[0]), {
        'within': float(within[0]), 'between': 0.0, 'M': 1})


_Outcome = collections.namedtuple(
    '_Outcome', ['report', 'variances', 'pseudo', 'per_draw_points'])


def _frequentist_pm(context, method):
    sample = context.sample
    fit = context.outcome_fit()
    m = glm.predict(fit, context.design(ROLE_PM))
    report = aipw.pm_estimate(sample, m, method=method)

    def pm_variance():
        derivative = None
        if context.outcome_family == common.FAMILY_LOGISTIC:
            m_r = m[sample.r_mask]
            derivative = m_r * (1.0 - m_r)
        return variance.pm_variance(
            sample, m[sample.r_mask], report.point, fit.vcov,
            context.design(ROLE_PM)[sample.r_mask], derivative)
    return _Outcome(report, {VARIANCE_PM: pm_variance}, None, None)


def _frequentist_qr(context, method):
    sample = context.sample
    route = _route(method)
    pseudo = context.pseudo_inclusion(route)
    point = pseudoweight.qr_mean(sample, pseudo)
    diagnostics = {'route': route}
    variances = {}
    if route == common.QR_PAPW:
        diagnostics['positivity_below_floor'] = \
            context.positivity().n_below_floor

        def sandwich():
            fit = context.z_fit(ROLE_QR)
            design = context.design(ROLE_QR)
            return variance.sandwich_papw(
                sample, pseudo.values, glm.predict(fit, design), design,
                point)
        variances[VARIANCE_SANDWICH] = sandwich
    elif route == common.QR_IPSW:
        variances[VARIANCE_IPSW] = lambda: variance.ipsw_variance(
            sample, context.pmle_fit(), context.design(ROLE_IPSW), point)
    report = aipw.make_report(method, point, diagnostics=diagnostics)
    return _Outcome(report, variances, pseudo, None)


def _frequentist_aipw(context, method):
    sample = context.sample
    options = context.options
    route = _route(method)
    family = context.outcome_family
    if options.joint and route != common.QR_IPSW:
        pir_b = context.pir_b() if route == common.QR_PAPP else None
        qr_role = ROLE_QR if route == common.QR_PAPW else ROLE_QR_X
        report = aipw.aipw_joint(
            sample, context.design(qr_role), context.design(ROLE_PM),
            family=family, normalization=options.normalization,
            pir_b=pir_b, method=method)
        return _Outcome(report, {}, None, None)

    pseudo = context.pseudo_inclusion(route)
    fit = context.outcome_fit()
    m = glm.predict(fit, context.design(ROLE_PM))
    report = aipw.aipw_plugin(sample, pseudo, m, options.normalization,
                              method=method)

    def chen():
        if family == common.FAMILY_LOGISTIC:
            sigma2 = m * (1.0 - m)
        else:
            sigma2 = fit.dispersion ** 2
        return variance.chen_dr_variance(sample, pseudo.values, m, sigma2)
    return _Outcome(report, {VARIANCE_CHEN: chen}, pseudo, None)


def _bayes_pm(context, method):
    sample = context.sample
    imputed = context.outcome_draws()
    points = aipw.pm_bayes_points(sample, imputed)
    within = np.array([
        variance.hajek_variance(row[sample.r_mask], sample.pi_r_r,
                                point).variance
        for row, point in zip(imputed, points)])
    rubin = _rubin(points, within)
    report = aipw.make_report(method, points.mean(), rubin.variance,
                              len(points))
    return _Outcome(report, {VARIANCE_RUBIN: lambda: rubin}, None, points)


def _bayes_qr(context, method):
    sample = context.sample
    route = _route(method)
    pib = context.pib_draws(route)
    points = pseudoweight.qr_bayes_points(sample, pib)
    within = np.array([
        variance.hajek_variance(sample.y_b, row, point).variance
        for row, point in zip(pib, points)])
    rubin = _rubin(points, within)
    pseudo = pseudoweight.PseudoInclusion(route, pib, {})
    report = aipw.make_report(method, points.mean(), rubin.variance,
                              len(points), {'route': route})
    return _Outcome(report, {VARIANCE_RUBIN: lambda: rubin}, pseudo, points)


def _bayes_aipw(context, method):
    sample = context.sample
    options = context.options
    route = _route(method)
    pib = context.pib_draws(route)
    if route == common.QR_PAPP:
        draws = aipw.make_draw_set(context.outcome_draws(), pib,
                                   context.pir_draws())
        bayes_route = common.ROUTE_PAPP
    else:
        draws = aipw.make_draw_set(context.outcome_draws(), pib)
        bayes_route = common.ROUTE_PAPW
    result = aipw.aipw_bayes(sample, draws, bayes_route,
                             options.normalization, options.within_form,
                             method=method)
    rubin = result.variance or _rubin(result.points, result.within)
    pseudo = pseudoweight.PseudoInclusion(route, pib, {})
    return _Outcome(result.report, {VARIANCE_RUBIN: lambda: rubin}, pseudo,
                    result.points)


class _PipelineSuite(object):
    """Point pipelines of one base method, per approach."""

    def __init__(self, frequentist, bayes, default_variance):
        self.frequentist = frequentist
        self.bayes = bayes
        self.default_variance = default_variance


def _create_pipeline_map():
    return {
        METHOD_PM: _PipelineSuite(_frequentist_pm, _bayes_pm, VARIANCE_PM),
        METHOD_PAPW: _PipelineSuite(_frequentist_qr, _bayes_qr,
                                    VARIANCE_SANDWICH),
        METHOD_PAPP: _PipelineSuite(_frequentist_qr, _bayes_qr,
                                    VARIANCE_BOOTSTRAP),
        METHOD_IPSW: _PipelineSuite(_frequentist_qr, None, VARIANCE_IPSW),
        METHOD_AIPW_PAPW: _PipelineSuite(_frequentist_aipw, _bayes_aipw,
                                         VARIANCE_CHEN),
        METHOD_AIPW_PAPP: _PipelineSuite(_frequentist_aipw, _bayes_aipw,
                                         VARIANCE_CHEN),
        METHOD_AIPW_IPSW: _PipelineSuite(_frequentist_aipw, None,
                                         VARIANCE_CHEN),
    }


class Dispatcher(object):
    """Maps method tags to estimation pipelines and their variances."""

    def __init__(self):
        self._logger = util.get_class_logger(self)
        self._pipeline_map = _create_pipeline_map()

    def add_method_alias(self, alias, existing_method):
        """Registers alias for the pipeline of existing_method."""

        try:
            self._pipeline_map[alias.upper()] = \
                self._pipeline_map[existing_method.upper()]
        except KeyError:
            raise DispatchException('No pipeline for: %r' % existing_method,
                                    valid=sorted(self._pipeline_map))

    def get_pipeline_suite(self, method):
        prefix, base = self._parse(method)
        return self._pipeline_map[base]

    def _parse(self, method):
        upper = method.strip().upper()
        if upper in self._pipeline_map:
            return None, upper
        return parse_method(method)

    def _point_function(self, method, options):
        prefix, base = self._parse(method)
        suite = self._pipeline_map[base]
        approach = options.approach
        if prefix == 'BART' and approach != APPROACH_BART:
            raise DispatchException('%s needs the bart approach' % method)
        if approach == APPROACH_FREQUENTIST:
            return suite, suite.frequentist
        if suite.bayes is None:
            raise DispatchException('%s is only available with the '
                                    'frequentist approach' % base)
        return suite, suite.bayes

    def variance_for(self, method, options):
        """Resolves the variance estimator of method under options.

        Raises:
            DispatchException: for an invalid method/variance combination.
        """

        suite, _ = self._point_function(method, options)
        requested = options.variance
        if options.approach != APPROACH_FREQUENTIST:
            if requested not in (VARIANCE_DEFAULT, VARIANCE_RUBIN,
                                 VARIANCE_NONE):
                raise DispatchException(
                    'posterior draws support only rubin variance, got %r' %
                    requested)
            return VARIANCE_NONE if requested == VARIANCE_NONE \
                else VARIANCE_RUBIN
        if requested == VARIANCE_DEFAULT:
            requested = suite.default_variance
            if options.joint and requested == VARIANCE_CHEN:
                requested = VARIANCE_BOOTSTRAP
        if requested in (VARIANCE_NONE, VARIANCE_BOOTSTRAP):
            return requested
        if requested == VARIANCE_RUBIN:
            raise DispatchException('rubin variance needs posterior draws')
        if requested != suite.default_variance or (
                requested == VARIANCE_CHEN and options.joint):
            raise DispatchException(
                '%s variance is not available for %s' % (requested, method))
        return requested

    def point(self, context, method):
        """Point estimate only; used for bootstrap replicates."""

        _, pipeline = self._point_function(method, context.options)
        return pipeline(context, self._parse(method)[1]).report.point

    def estimate(self, context, method):
        """Runs method on the context's sample with its variance.

        Returns:
            DispatchResult.
        """

        options = context.options
        variance_name = self.variance_for(method, options)
        _, pipeline = self._point_function(method, options)
        base = self._parse(method)[1]
        try:
            outcome = pipeline(context, base)
        except common.NonProbException as e:
            util.prepend_message_to_exception('%s: ' % method, e)
            raise
        report = outcome.report._replace(method=method)
        variance_report = None
        if variance_name == VARIANCE_BOOTSTRAP:
            variance_report = variance.rao_wu_bootstrap(
                context.sample,
                lambda replicate: self.point(
                    EstimationContext(replicate, options), base),
                options.B,
                util.derive_int_seed(options.seed, _BOOTSTRAP_STREAM),
                cluster_aware=context.sample.has_clusters)
            report = aipw.attach_variance(report, variance_report, options.B)
        elif variance_name != VARIANCE_NONE:
            variance_report = outcome.variances[variance_name]()
            report = aipw.attach_variance(report, variance_report)
        self._logger.debug('%s: point=%g se=%g', method, report.point,
                           report.se)
        return DispatchResult(report, variance_report, outcome.pseudo,
                              outcome.per_draw_points)


# vi:sts=4 sw=4 et
