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


"""pynonprob utilities.
"""


import logging
import traceback

import numpy as np

from pynonprob import common


def get_stack_trace():
    """Get the current stack trace as string."""

    return traceback.format_exc()


def prepend_message_to_exception(message, exc):
    """Prepend message to the exception."""

    exc.args = (message + str(exc),) + tuple(exc.args[1:])
    return


def get_class_logger(o):
    return logging.getLogger(
        '%s.%s' % (o.__class__.__module__, o.__class__.__name__))


def get_logger_from_class(c):
    return logging.getLogger('%s.%s' % (c.__module__, c.__name__))


def derive_seed_sequence(seed, *keys):
    """Returns a SeedSequence identified by the top-level seed and keys.

    Streams are counter based: the same (seed, keys) always yields the same
    stream regardless of the order in which streams are requested.

    Args:
        seed: non-negative integer top-level seed.
        keys: non-negative integers, e.g. replication index or bootstrap
              replicate index.
    """

    entropy = [int(seed)] + [int(k) for k in keys]
    if any(v < 0 for v in entropy):
        raise ValueError('seed and stream keys must be non-negative')
    return np.random.SeedSequence(entropy)


def derive_rng(seed, *keys):
    """Returns a numpy Generator for the stream (seed, keys)."""

    return np.random.default_rng(derive_seed_sequence(seed, *keys))


def derive_int_seed(seed, *keys):
    """Returns a 32-bit integer seed for the stream (seed, keys)."""

    return int(derive_seed_sequence(seed, *keys).generate_state(1)[0])


def as_vector(values, name='vector'):
    """Converts values to a 1-D float array.

    Raises:
        ValueError: when values is not one dimensional.
    """

    array = np.asarray(values, dtype=float)
    if array.ndim == 0:
        array = array.reshape(1)
    if array.ndim != 1:
        raise ValueError('%s must be one dimensional' % name)
    return array


def as_matrix(values, name='matrix'):
    """Converts values to a 2-D float array; vectors become one column."""

    array = np.asarray(values, dtype=float)
    if array.ndim == 1:
        array = array.reshape(-1, 1)
    if array.ndim != 2:
        raise ValueError('%s must be two dimensional' % name)
    return array


def check_same_length(name, *arrays):
    """Raises LengthMismatchException unless all arrays share length."""

    lengths = [len(a) for a in arrays]
    if len(set(lengths)) > 1:
        raise common.LengthMismatchException(
            '%s: lengths differ %r' % (name, lengths),
            expected=lengths[0], actual=lengths[1:])


def read_only(array):
    """Returns a read-only copy of a numpy array; the argument stays
    writeable."""

    array = np.array(array, copy=True)
    array.flags.writeable = False
    return array


# vi:sts=4 sw=4 et
