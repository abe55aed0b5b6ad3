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


"""Regression trees for the sum-of-trees sampler.

A tree is grown over a fixed training matrix; every node keeps the indices of
the training rows it holds so moves only partition index arrays. A row goes to
the left child when x[split_var] <= split_value.
"""


import collections

import numpy as np


GROW = 'grow'
PRUNE = 'prune'
CHANGE = 'change'

# Move probabilities for a tree that has at least one internal node. A stump
# can only grow.
MOVE_PROBABILITIES = ((GROW, 0.4), (PRUNE, 0.4), (CHANGE, 0.2))
_P_GROW = 0.4
_P_PRUNE = 0.4


class TreeNode(object):
    """A node of a regression tree: a leaf (mu) or an internal split."""

    def __init__(self, index, depth=0, mu=0.0, parent=None):
        self.index = index
        self.depth = depth
        self.mu = mu
        self.parent = parent
        self.split_var = None
        self.split_value = None
        self.left = None
        self.right = None
        self._candidates = None

    @property
    def is_leaf(self):
        return self.left is None

    @property
    def is_nog(self):
        """True for an internal node whose children are both leaves."""

        return (not self.is_leaf and self.left.is_leaf and
                self.right.is_leaf)

    def candidates(self, X):
        """Returns [(var, values)] of admissible split rules at this node.

        values are the node's unique values of var without the largest one,
        so both children of any admissible rule are non-empty.
        """

        if self._candidates is None:
            found = []
            rows = X[self.index]
            for var in range(X.shape[1]):
                values = np.unique(rows[:, var])
                if len(values) > 1:
                    found.append((var, values[:-1]))
            self._candidates = found
        return self._candidates

    def invalidate(self):
        self._candidates = None

    def walk(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            if not node.is_leaf:
                stack.append(node.right)
                stack.append(node.left)


def partition(X, index, split_var, split_value):
    goes_left = X[index, split_var] <= split_value
    return index[goes_left], index[~goes_left]


class Tree(object):
    """A mutable regression tree over a training matrix."""

    def __init__(self, n_rows, mu=0.0):
        self.root = TreeNode(np.arange(n_rows), mu=mu)

    def leaves(self):
        return [node for node in self.root.walk() if node.is_leaf]

    def nog_nodes(self):
        return [node for node in self.root.walk() if node.is_nog]

    def is_stump(self):
        return self.root.is_leaf

    def growable_leaves(self, X):
        return [leaf for leaf in self.leaves() if leaf.candidates(X)]

    def fitted(self, n_rows):
        values = np.empty(n_rows)
        for leaf in self.leaves():
            values[leaf.index] = leaf.mu
        return values

    def n_leaves(self):
        return len(self.leaves())

    def grow(self, X, node, split_var, split_value):
        left_index, right_index = partition(X, node.index, split_var,
                                            split_value)
        node.split_var = split_var
        node.split_value = split_value
        node.left = TreeNode(left_index, node.depth + 1, node.mu, node)
        node.right = TreeNode(right_index, node.depth + 1, node.mu, node)

    def prune(self, node, mu=0.0):
        node.split_var = None
        node.split_value = None
        node.left = None
        node.right = None
        node.mu = mu

    def change(self, X, node, split_var, split_value):
        """Replaces the rule of a nog node and re-partitions its leaves."""

        left_index, right_index = partition(X, node.index, split_var,
                                            split_value)
        node.split_var = split_var
        node.split_value = split_value
        node.left.index = left_index
        node.right.index = right_index
        node.left.invalidate()
        node.right.invalidate()

    def check(self, X):
        """Returns True when every training row maps to exactly one leaf and
        every internal node has two non-empty children."""

        counts = np.zeros(X.shape[0], dtype=int)
        for node in self.root.walk():
            if node.is_leaf:
                counts[node.index] += 1
                continue
            if len(node.left.index) == 0 or len(node.right.index) == 0:
                return False
            left, right = partition(X, node.index, node.split_var,
                                    node.split_value)
            if (not np.array_equal(left, node.left.index) or
                    not np.array_equal(right, node.right.index)):
                return False
        return bool(np.all(counts == 1))


def split_probability(depth, alpha, beta_depth):
    """Prior probability that a node at depth is internal."""

    return alpha * (1.0 + depth) ** (-beta_depth)


def leaf_log_marginal(n, residual_sum, sigma2, tau2):
    """Log marginal likelihood of a leaf's residuals with mu ~ N(0, tau2),
    up to terms that cancel between trees sharing the same residuals."""

    total = sigma2 + n * tau2
    return (0.5 * np.log(sigma2 / total) +
            tau2 * residual_sum ** 2 / (2.0 * sigma2 * total))


GrowTerms = collections.namedtuple(
    'GrowTerms', ['depth', 'n_vars', 'n_values', 'n_growable_before',
                  'n_nog_after', 'stump_before'])


def grow_log_ratio(terms, log_likelihood_ratio, alpha, beta_depth):
    """Log Metropolis-Hastings ratio of growing a leaf into a nog node.

    The ratio is the sum of the log prior ratio, the log marginal likelihood
    ratio and the log proposal ratio. The prune of the same node has the
    negated ratio.

    Args:
        terms: GrowTerms describing the leaf and the trees before/after.
        log_likelihood_ratio: log L(after) - log L(before).
        alpha, beta_depth: tree depth prior.
    """

    p_split = split_probability(terms.depth, alpha, beta_depth)
    p_child = split_probability(terms.depth + 1, alpha, beta_depth)
    log_rule = -np.log(terms.n_vars) - np.log(terms.n_values)
    log_prior = (np.log(p_split) + 2.0 * np.log1p(-p_child) -
                 np.log1p(-p_split) + log_rule)

    p_grow = 1.0 if terms.stump_before else _P_GROW
    log_forward = (np.log(p_grow) - np.log(terms.n_growable_before) +
                   log_rule)
    log_backward = np.log(_P_PRUNE) - np.log(terms.n_nog_after)
    return log_prior + log_likelihood_ratio + log_backward - log_forward


def residual_split_likelihood(residual, node_index, left_index, right_index,
                              sigma2, tau2):
    """log L(two leaves) - log L(one leaf) for residuals of a node."""

    return (leaf_log_marginal(len(left_index), residual[left_index].sum(),
                              sigma2, tau2) +
            leaf_log_marginal(len(right_index), residual[right_index].sum(),
                              sigma2, tau2) -
            leaf_log_marginal(len(node_index), residual[node_index].sum(),
                              sigma2, tau2))


class FlatTree(object):
    """Immutable array encoding of a tree kept in a posterior state.

    Node 0 is the root. split_var is -1 for leaves; left/right hold child
    positions (-1 for leaves); mu holds leaf values (0 for internal nodes).
    """

    __slots__ = ('split_var', 'split_value', 'left', 'right', 'mu')

    def __init__(self, split_var, split_value, left, right, mu):
        self.split_var = np.asarray(split_var, dtype=np.int32)
        self.split_value = np.asarray(split_value, dtype=float)
        self.left = np.asarray(left, dtype=np.int32)
        self.right = np.asarray(right, dtype=np.int32)
        self.mu = np.asarray(mu, dtype=float)
        for array in (self.split_var, self.split_value, self.left,
                      self.right, self.mu):
            array.flags.writeable = False

    @classmethod
    def from_tree(cls, tree):
        nodes = []
        position = {}
        for node in tree.root.walk():
            position[id(node)] = len(nodes)
            nodes.append(node)
        split_var = []
        split_value = []
        left = []
        right = []
        mu = []
        for node in nodes:
            if node.is_leaf:
                split_var.append(-1)
                split_value.append(0.0)
                left.append(-1)
                right.append(-1)
                mu.append(node.mu)
            else:
                split_var.append(node.split_var)
                split_value.append(node.split_value)
                left.append(position[id(node.left)])
                right.append(position[id(node.right)])
                mu.append(0.0)
        return cls(split_var, split_value, left, right, mu)

    @classmethod
    def leaf(cls, mu):
        return cls([-1], [0.0], [-1], [-1], [mu])

    def __len__(self):
        return len(self.mu)

    @property
    def n_leaves(self):
        return int(np.sum(self.split_var < 0))

    def evaluate(self, X):
        """Routes every row of X to its leaf and returns the leaf values."""

        node = np.zeros(X.shape[0], dtype=np.int32)
        rows = np.arange(X.shape[0])
        internal = self.split_var[node] >= 0
        while np.any(internal):
            active = rows[internal]
            current = node[active]
            goes_left = (X[active, self.split_var[current]] <=
                         self.split_value[current])
            node[active] = np.where(goes_left, self.left[current],
                                    self.right[current])
            internal = self.split_var[node] >= 0
        return self.mu[node]

    def to_node(self):
        """Rebuilds a TreeNode structure (without training indices)."""

        def build(position, depth, parent):
            node = TreeNode(None, depth, float(self.mu[position]), parent)
            if self.split_var[position] >= 0:
                node.split_var = int(self.split_var[position])
                node.split_value = float(self.split_value[position])
                node.left = build(self.left[position], depth + 1, node)
                node.right = build(self.right[position], depth + 1, node)
            return node
        return build(0, 0, None)


# vi:sts=4 sw=4 et
