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


"""Bayesian backfitting sampler for sums of regression trees.

Each sweep updates every tree in turn against the residuals of the others by
one Metropolis-Hastings move (grow, prune or change), redraws its leaf values
from their normal full conditionals, and finally redraws sigma from its
inverse-gamma full conditional. The probit variant first redraws the latent
normal responses and keeps sigma fixed at 1.
"""


import logging

import numpy as np
from scipy import special
from scipy import stats

from pynonprob import common
from pynonprob import glm
from pynonprob import util
from pynonprob.bart import _base
from pynonprob.bart import tree as tree_module


_LOGGER = logging.getLogger(__name__)

# Lower bound of the least squares sigma used to calibrate lambda, on the
# internal [-0.5, 0.5] response scale.
_MIN_SIGMA_HAT = 1e-6


class BackfittingSampler(object):
    """Owns one chain: the trees, their fitted values and sigma."""

    def __init__(self, X, target, config, tau, sigma2, lambda_, rng,
                 init_mu=0.0, latent=None):
        """Constructs a sampler.

        Args:
            X: n x p training matrix.
            target: working response on the internal scale (ignored when
                    latent is given).
            config: BartConfig.
            tau: prior SD of each leaf value.
            sigma2: initial residual variance (fixed at 1 for probit).
            lambda_: scale of the sigma prior.
            rng: numpy Generator owned by this chain.
            init_mu: initial leaf value of every stump.
            latent: (t, offset) for the probit variant.
        """

        self._logger = util.get_class_logger(self)
        self._X = X
        self._n = X.shape[0]
        self._config = config
        self._tau2 = tau ** 2
        self._sigma2 = sigma2
        self._lambda = lambda_
        self._rng = rng
        self._latent = latent
        self._target = np.array(target, dtype=float)
        self.trees = [tree_module.Tree(self._n, init_mu)
                      for _ in range(config.m)]
        self._fits = np.full((config.m, self._n), float(init_mu))
        self._total = self._fits.sum(axis=0)
        self.accepted = dict((move, 0) for move, _ in
                             tree_module.MOVE_PROBABILITIES)
        self.proposed = dict(self.accepted)

    @property
    def sigma2(self):
        return self._sigma2

    @property
    def total(self):
        return self._total

    def _choose_move(self, tree):
        if tree.is_stump():
            return tree_module.GROW
        u = self._rng.uniform()
        cumulative = 0.0
        for move, probability in tree_module.MOVE_PROBABILITIES:
            cumulative += probability
            if u < cumulative:
                return move
        return tree_module.CHANGE

    def _pick(self, items):
        return items[self._rng.integers(len(items))]

    def _accept(self, log_ratio):
        return np.log(self._rng.uniform()) < log_ratio

    def _grow(self, tree, residual):
        X = self._X
        growable = tree.growable_leaves(X)
        if not growable:
            return False
        leaf = self._pick(growable)
        candidates = leaf.candidates(X)
        split_var, values = self._pick(candidates)
        split_value = values[self._rng.integers(len(values))]
        left, right = tree_module.partition(X, leaf.index, split_var,
                                            split_value)
        likelihood_ratio = tree_module.residual_split_likelihood(
            residual, leaf.index, left, right, self._sigma2, self._tau2)
        parent_was_nog = leaf.parent is not None and leaf.parent.is_nog
        terms = tree_module.GrowTerms(
            leaf.depth, len(candidates), len(values), len(growable),
            len(tree.nog_nodes()) + 1 - (1 if parent_was_nog else 0),
            tree.is_stump())
        log_ratio = tree_module.grow_log_ratio(
            terms, likelihood_ratio, self._config.alpha,
            self._config.beta_depth)
        if self._accept(log_ratio):
            tree.grow(X, leaf, split_var, split_value)
            return True
        return False

    def _prune(self, tree, residual):
        X = self._X
        nogs = tree.nog_nodes()
        node = self._pick(nogs)
        likelihood_ratio = tree_module.residual_split_likelihood(
            residual, node.index, node.left.index, node.right.index,
            self._sigma2, self._tau2)
        growable = tree.growable_leaves(X)
        n_growable_after = (len(growable) + 1 -
                            sum(1 for child in (node.left, node.right)
                                if child.candidates(X)))
        candidates = node.candidates(X)
        n_values = [len(values) for var, values in candidates
                    if var == node.split_var][0]
        terms = tree_module.GrowTerms(
            node.depth, len(candidates), n_values, n_growable_after,
            len(nogs), node is tree.root)
        log_ratio = -tree_module.grow_log_ratio(
            terms, likelihood_ratio, self._config.alpha,
            self._config.beta_depth)
        if self._accept(log_ratio):
            tree.prune(node)
            return True
        return False

    def _change(self, tree, residual):
        X = self._X
        node = self._pick(tree.nog_nodes())
        split_var, values = self._pick(node.candidates(X))
        split_value = values[self._rng.integers(len(values))]
        left, right = tree_module.partition(X, node.index, split_var,
                                            split_value)
        marginal = tree_module.leaf_log_marginal
        sigma2, tau2 = self._sigma2, self._tau2
        log_ratio = (
            marginal(len(left), residual[left].sum(), sigma2, tau2) +
            marginal(len(right), residual[right].sum(), sigma2, tau2) -
            marginal(len(node.left.index), residual[node.left.index].sum(),
                     sigma2, tau2) -
            marginal(len(node.right.index), residual[node.right.index].sum(),
                     sigma2, tau2))
        if self._accept(log_ratio):
            tree.change(X, node, split_var, split_value)
            return True
        return False

    def _draw_leaves(self, tree, residual):
        fitted = np.empty(self._n)
        sigma2, tau2 = self._sigma2, self._tau2
        for leaf in tree.leaves():
            n = len(leaf.index)
            precision = sigma2 + n * tau2
            mean = tau2 * residual[leaf.index].sum() / precision
            sd = np.sqrt(sigma2 * tau2 / precision)
            leaf.mu = mean + sd * self._rng.standard_normal()
            fitted[leaf.index] = leaf.mu
        return fitted

    def _draw_latent(self):
        t, offset = self._latent
        g = offset + self._total
        lower = np.where(t == 1.0, -g, -np.inf)
        upper = np.where(t == 1.0, np.inf, -g)
        z = stats.truncnorm.rvs(lower, upper, loc=g, scale=1.0,
                                random_state=self._rng)
        self._target = z - offset

    def _draw_sigma2(self):
        nu = self._config.nu
        ssr = float(np.sum((self._target - self._total) ** 2))
        self._sigma2 = ((nu * self._lambda + ssr) /
                        self._rng.chisquare(nu + self._n))

    def sweep(self):
        if self._latent is not None:
            self._draw_latent()
        moves = {tree_module.GROW: self._grow,
                 tree_module.PRUNE: self._prune,
                 tree_module.CHANGE: self._change}
        for j, tree in enumerate(self.trees):
            residual = self._target - (self._total - self._fits[j])
            move = self._choose_move(tree)
            self.proposed[move] += 1
            if moves[move](tree, residual):
                self.accepted[move] += 1
            fitted = self._draw_leaves(tree, residual)
            self._total += fitted - self._fits[j]
            self._fits[j] = fitted
        if self._latent is None:
            self._draw_sigma2()

    def snapshot(self):
        return tuple(tree_module.FlatTree.from_tree(tree)
                     for tree in self.trees)


def _prepare_design(X, n_response):
    X = util.as_matrix(X, 'X')
    if X.shape[0] != n_response:
        raise common.LengthMismatchException(
            'response', expected=X.shape[0], actual=n_response)
    if X.shape[0] < 2:
        raise ValueError('at least two rows are required')
    if not np.all(np.isfinite(X)):
        raise ValueError('X must be finite')
    for var in range(X.shape[1]):
        if np.all(X[:, var] == X[0, var]):
            _LOGGER.warning('DegenerateDesign: column %d has a single unique '
                            'value and will never be split on', var)
    return np.ascontiguousarray(X)


def _least_squares_sigma(X, y):
    design = np.hstack([np.ones((X.shape[0], 1)), X])
    try:
        sigma = glm.fit_linear(design, y).dispersion
    except (glm.SingularDesignException, glm.UnderdeterminedException):
        sigma = float(np.std(y, ddof=1))
    return max(sigma, _MIN_SIGMA_HAT)


def _calibrate_lambda(sigma_hat, config):
    if config.lambda_ is not None:
        return float(config.lambda_)
    return sigma_hat ** 2 * stats.chi2.ppf(1.0 - config.q, config.nu) / \
        config.nu


def _run_chain(sampler, config, scale, kind):
    states = []
    total = config.burn_in + config.n_draws * config.thinning
    for iteration in range(total):
        sampler.sweep()
        after = iteration - config.burn_in
        if after >= 0 and after % config.thinning == 0:
            sigma = None
            if kind != _base.KIND_PROBIT:
                sigma = float(np.sqrt(sampler.sigma2) * scale)
            states.append(_base.SumOfTreesState(sampler.snapshot(), sigma,
                                                iteration))
        _LOGGER.log(common.LOGLEVEL_FINE, '%s sweep %d: sigma2=%.6g', kind,
                    iteration, sampler.sigma2)
    _LOGGER.debug('%s chain done: proposed %r accepted %r', kind,
                  sampler.proposed, sampler.accepted)
    return tuple(states)


def _fit_continuous_kind(X, y, config, kind):
    y = util.as_vector(y, 'y')
    if not np.all(np.isfinite(y)):
        raise ValueError('y must be finite')
    X = _prepare_design(X, len(y))
    low, high = float(y.min()), float(y.max())
    shift = 0.5 * (low + high)
    scale = high - low
    if scale <= 0.0:
        scale = 1.0
    target = (y - shift) / scale

    tau = 0.5 / (config.k * np.sqrt(config.m))
    sigma_hat = _least_squares_sigma(X, target)
    lambda_ = _calibrate_lambda(sigma_hat, config)
    rng = np.random.default_rng(config.seed)
    sampler = BackfittingSampler(X, target, config, tau, sigma_hat ** 2,
                                 lambda_, rng,
                                 init_mu=float(target.mean()) / config.m)
    states = _run_chain(sampler, config, scale, kind)
    return _base.BartFit(kind, states, shift, scale, 0.0, X.shape[1])


def bart_fit_continuous(X, y, config):
    """Fits continuous BART; returns a BartFit holding the kept states.

    y is rescaled internally to [-0.5, 0.5]; predictions and sigma are on the
    original scale.
    """

    return _fit_continuous_kind(X, y, config, _base.KIND_CONTINUOUS)


def bart_fit_logit_target(X, p, config):
    """Fits continuous BART to logit(p) for probabilities p in (0, 1).

    Raises:
        ResponseOutOfRangeException: when some p is outside (0, 1).
    """

    p = util.as_vector(p, 'p')
    if np.any(~((p > 0.0) & (p < 1.0))):
        raise common.ResponseOutOfRangeException(
            'logit-target responses must lie in (0, 1)')
    return _fit_continuous_kind(X, special.logit(p), config,
                                _base.KIND_LOGIT_TARGET)


def bart_fit_probit(X, t, config):
    """Fits probit BART by latent normal augmentation.

    Raises:
        SingleClassException: when t has a single class.
    """

    t = util.as_vector(t, 't')
    if not np.all((t == 0.0) | (t == 1.0)):
        raise ValueError('probit responses must be 0/1')
    if np.all(t == t[0]):
        raise _base.SingleClassException(
            'all responses equal %d' % int(t[0]))
    X = _prepare_design(X, len(t))
    offset = float(stats.norm.ppf(t.mean()))
    tau = 3.0 / (config.k * np.sqrt(config.m))
    rng = np.random.default_rng(config.seed)
    sampler = BackfittingSampler(X, np.zeros(len(t)), config, tau, 1.0, None,
                                 rng, latent=(t, offset))
    states = _run_chain(sampler, config, 1.0, _base.KIND_PROBIT)
    return _base.BartFit(_base.KIND_PROBIT, states, 0.0, 1.0, offset,
                         X.shape[1])


# Probit probabilities are kept this far from 0 and 1.
_PROBIT_EPS = 1e-12


def bart_predict(fit, X_new, scale=common.SCALE_MEAN):
    """Evaluates every kept state on X_new.

    Args:
        fit: BartFit, or a sequence of SumOfTreesState read as a continuous
             ensemble without rescaling.
        X_new: matrix with the training width.
        scale: common.SCALE_MEAN (response or probability scale) or
               common.SCALE_LINEAR_PREDICTOR / common.SCALE_LOGIT (f, G or
               k scale).

    Returns:
        M x n matrix, one row per state.

    Raises:
        DimensionMismatchException: when X_new has the wrong width.
    """

    if not isinstance(fit, _base.BartFit):
        fit = _base.BartFit(_base.KIND_CONTINUOUS, tuple(fit), 0.0, 1.0, 0.0,
                            None)
    X_new = util.as_matrix(X_new, 'X_new')
    if fit.n_features is not None and X_new.shape[1] != fit.n_features:
        raise common.DimensionMismatchException(
            'X_new has %d columns, ensemble was trained on %d' %
            (X_new.shape[1], fit.n_features),
            expected=fit.n_features, actual=X_new.shape[1])
    if scale not in (common.SCALE_MEAN, common.SCALE_LINEAR_PREDICTOR,
                     common.SCALE_LOGIT):
        raise ValueError('unknown scale %r' % scale)

    raw = np.empty((len(fit.states), X_new.shape[0]))
    for row, state in enumerate(fit.states):
        values = np.zeros(X_new.shape[0])
        for flat in state.trees:
            values += flat.evaluate(X_new)
        raw[row] = values

    if fit.kind == _base.KIND_PROBIT:
        g = fit.offset + raw
        if scale == common.SCALE_MEAN:
            return np.clip(stats.norm.cdf(g), _PROBIT_EPS, 1.0 - _PROBIT_EPS)
        return g
    linear = fit.shift + fit.scale * raw
    if fit.kind == _base.KIND_LOGIT_TARGET and scale == common.SCALE_MEAN:
        return special.expit(linear)
    return linear


# vi:sts=4 sw=4 et
