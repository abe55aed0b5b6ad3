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


"""Binary dump of tree ensembles for debugging.

Layout (all little-endian):

    header   '<4sHBIIddd'  magic b'BART', format version, kind code,
                           tree count m, state count, shift, scale, offset
    state    '<dI'         sigma (NaN for probit), iteration
      tree   '<I'          node count, followed by that many node records
        node '<iiidd'      split variable (-1 for a leaf), left, right,
                           split value, leaf value

The format is versioned but is not a compatibility surface: readers reject
any version other than the one they write.
"""


import struct

import numpy as np

from pynonprob import common
from pynonprob.bart import _base
from pynonprob.bart import tree as tree_module


_MAGIC = b'BART'
_HEADER = struct.Struct('<4sHBIIddd')
_STATE = struct.Struct('<dI')
_TREE = struct.Struct('<I')
_NODE = struct.Struct('<iiidd')

_KIND_CODES = {
    _base.KIND_CONTINUOUS: 0,
    _base.KIND_PROBIT: 1,
    _base.KIND_LOGIT_TARGET: 2,
}
_CODE_KINDS = dict((code, kind) for kind, code in _KIND_CODES.items())


class InvalidDumpException(common.NonProbException):
    """The byte string is not a dump this module can read."""


def create_header(fit):
    m = len(fit.states[0].trees) if fit.states else 0
    return _HEADER.pack(_MAGIC, common.DUMP_FORMAT_VERSION,
                        _KIND_CODES[fit.kind], m, len(fit.states),
                        fit.shift, fit.scale, fit.offset)


def _pack_tree(flat):
    parts = [_TREE.pack(len(flat))]
    for position in range(len(flat)):
        parts.append(_NODE.pack(int(flat.split_var[position]),
                                int(flat.left[position]),
                                int(flat.right[position]),
                                float(flat.split_value[position]),
                                float(flat.mu[position])))
    return b''.join(parts)


def dumps(fit):
    """Serializes a BartFit to bytes."""

    parts = [create_header(fit)]
    for state in fit.states:
        sigma = np.nan if state.sigma is None else state.sigma
        parts.append(_STATE.pack(sigma, state.iteration))
        for flat in state.trees:
            parts.append(_pack_tree(flat))
    return b''.join(parts)


class _Reader(object):

    def __init__(self, data):
        self._data = data
        self._position = 0

    def unpack(self, layout):
        end = self._position + layout.size
        if end > len(self._data):
            raise InvalidDumpException('dump truncated at byte %d' %
                                       self._position)
        values = layout.unpack_from(self._data, self._position)
        self._position = end
        return values

    def at_end(self):
        return self._position == len(self._data)


def loads(data, n_features=None):
    """Parses bytes written by dumps back into a BartFit.

    Raises:
        InvalidDumpException: on a bad magic, version or truncated input.
    """

    reader = _Reader(data)
    magic, version, kind_code, m, n_states, shift, scale, offset = \
        reader.unpack(_HEADER)
    if magic != _MAGIC:
        raise InvalidDumpException('bad magic %r' % magic)
    if version != common.DUMP_FORMAT_VERSION:
        raise InvalidDumpException('unsupported dump version %d' % version)
    if kind_code not in _CODE_KINDS:
        raise InvalidDumpException('unknown kind code %d' % kind_code)

    states = []
    for _ in range(n_states):
        sigma, iteration = reader.unpack(_STATE)
        trees = []
        for _ in range(m):
            (count,) = reader.unpack(_TREE)
            records = [reader.unpack(_NODE) for _ in range(count)]
            split_var, left, right, split_value, mu = zip(*records)
            trees.append(tree_module.FlatTree(split_var, split_value, left,
                                              right, mu))
        states.append(_base.SumOfTreesState(
            tuple(trees), None if np.isnan(sigma) else sigma, iteration))
    if not reader.at_end():
        raise InvalidDumpException('trailing bytes after %d states' %
                                   n_states)
    return _base.BartFit(_CODE_KINDS[kind_code], tuple(states), shift, scale,
                         offset, n_features)


def dump(fit, path):
    with open(path, 'wb') as f:
        f.write(dumps(fit))


def load(path, n_features=None):
    with open(path, 'rb') as f:
        return loads(f.read(), n_features)


# vi:sts=4 sw=4 et
