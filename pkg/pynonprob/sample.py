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


"""Combined-sample data structures.

A combined sample S = S_B + S_R holds one record per sampled unit of the
non-probability sample S_B (z=1, outcome observed) and of the probability
reference sample S_R (z=0, inclusion probability known). The two selection
mechanisms are assumed conditionally independent given the covariates; that
assumption cannot be checked from data and is documented only.
"""


import collections
import logging

import numpy as np

from pynonprob import common
from pynonprob import util


_LOGGER = logging.getLogger(__name__)


class DuplicateIdException(common.NonProbException):
    """Record ids overlap, i.e. the samples are not disjoint."""

    def __init__(self, name, record_id=None):
        super(DuplicateIdException, self).__init__(name)
        self.record_id = record_id


class MissingFieldException(common.NonProbException):
    """A required field is absent on some record."""

    def __init__(self, field, row=None):
        if row is None:
            message = 'missing field %r' % field
        else:
            message = 'missing field %r on row %r' % (field, row)
        super(MissingFieldException, self).__init__(message)
        self.field = field
        self.row = row


class EmptySampleException(common.NonProbException):
    """One of the two samples has no records."""


class InvalidRecordException(common.NonProbException):
    """A record violates a field invariant."""


_UnitRecordBase = collections.namedtuple(
    '_UnitRecordBase', ['id', 'cluster_id', 'x', 'd', 'y', 'pi_r', 'z'])


class UnitRecord(_UnitRecordBase):
    """One sampled unit.

    x is a tuple of analysis covariates, d an optional tuple of design
    covariates (None when absent), y the optional outcome (binary outcomes
    coded 0/1), pi_r the optional reference inclusion probability and z the
    membership flag (1 for S_B, 0 for S_R).
    """

    __slots__ = ()

    def __new__(cls, id, x, z, y=None, pi_r=None, d=None, cluster_id=None):
        if z not in (common.Z_NONPROB, common.Z_REFERENCE):
            raise InvalidRecordException(
                'record %r: z must be 0 or 1, got %r' % (id, z))
        if pi_r is not None:
            pi_r = float(pi_r)
            if not (0.0 < pi_r <= 1.0):
                raise InvalidRecordException(
                    'record %r: pi_r must lie in (0, 1], got %r' % (id, pi_r))
        if y is not None:
            y = float(y)
        x = tuple(float(v) for v in x) if x is not None else None
        if d is not None:
            d = tuple(float(v) for v in d)
        return super(UnitRecord, cls).__new__(
            cls, id, cluster_id, x, d, y, pi_r, int(z))


XStarLayout = collections.namedtuple(
    'XStarLayout', ['x_names', 'd_names'])


class CombinedSample(object):
    """Validated combined sample. Construct through build_combined or take.

    Arrays are read-only and in record order: z, y (NaN where absent), pi_r
    (NaN where absent), x (n x p), d (n x q, None when no record has d).
    Records are materialized from the arrays on first access.
    """

    def __init__(self, ids, cluster_labels, population_size, layout,
                 outcome_kind, x, d, z, y, pi_r, records=None):
        self._ids = tuple(ids)
        self._cluster_labels = tuple(cluster_labels)
        self._records = tuple(records) if records is not None else None
        self.population_size = population_size
        self.x_star_layout = layout
        self.outcome_kind = outcome_kind
        self.x = util.read_only(x)
        self.d = util.read_only(d) if d is not None else None
        self.z = util.read_only(z)
        self.y = util.read_only(y)
        self.pi_r = util.read_only(pi_r)
        codes = {}
        cluster_codes = np.empty(len(self._ids), dtype=int)
        for i, label in enumerate(self._cluster_labels):
            if label is None:
                cluster_codes[i] = -1
            else:
                cluster_codes[i] = codes.setdefault(label, len(codes))
        self.cluster_codes = util.read_only(cluster_codes)
        self.b_mask = util.read_only(z == common.Z_NONPROB)
        self.r_mask = util.read_only(z == common.Z_REFERENCE)
        self.n_b = int(self.b_mask.sum())
        self.n_r = int(self.r_mask.sum())

    @property
    def records(self):
        if self._records is None:
            records = []
            for i, record_id in enumerate(self._ids):
                d = None
                if self.d is not None and not np.isnan(self.d[i]).any():
                    d = self.d[i]
                y = None if np.isnan(self.y[i]) else self.y[i]
                pi_r = None if np.isnan(self.pi_r[i]) else self.pi_r[i]
                records.append(UnitRecord(
                    record_id, self.x[i], int(self.z[i]), y=y, pi_r=pi_r,
                    d=d, cluster_id=self._cluster_labels[i]))
            self._records = tuple(records)
        return list(self._records)

    @property
    def ids(self):
        return list(self._ids)

    @property
    def cluster_labels(self):
        return list(self._cluster_labels)

    def __len__(self):
        return len(self._ids)

    @property
    def has_clusters(self):
        return bool(np.all(self.cluster_codes >= 0))

    @property
    def y_b(self):
        return self.y[self.b_mask]

    @property
    def pi_r_r(self):
        return self.pi_r[self.r_mask]

    @property
    def pi_r_b(self):
        """Reference inclusion probabilities on S_B rows.

        Raises:
            MissingFieldException: when pi_r is unknown for some S_B row.
        """

        values = self.pi_r[self.b_mask]
        if np.any(np.isnan(values)):
            row = int(np.flatnonzero(self.b_mask)[np.isnan(values)][0])
            raise MissingFieldException('pi_r', row=self._ids[row])
        return values

    def estimated_population_size(self):
        """Returns N when known, otherwise the S_R estimate sum(1/pi_r)."""

        if self.population_size is not None:
            return float(self.population_size)
        return float(np.sum(1.0 / self.pi_r_r))

    def n_clusters(self, mask):
        codes = self.cluster_codes[mask]
        if np.any(codes < 0):
            return int(mask.sum())
        return int(len(np.unique(codes)))

    def __repr__(self):
        return 'CombinedSample(n_b=%d, n_r=%d, N=%r, outcome=%s)' % (
            self.n_b, self.n_r, self.population_size, self.outcome_kind)


def _check_reference_row(record):
    if record.z != common.Z_REFERENCE:
        raise InvalidRecordException(
            'reference row %r has z=%r' % (record.id, record.z))
    if record.pi_r is None:
        raise MissingFieldException('pi_r', row=record.id)


def _check_nonprob_row(record):
    if record.z != common.Z_NONPROB:
        raise InvalidRecordException(
            'nonprob row %r has z=%r' % (record.id, record.z))
    if record.y is None:
        raise MissingFieldException('y', row=record.id)


def build_combined(reference_rows, nonprob_rows, population_size=None,
                   outcome_kind=common.OUTCOME_CONTINUOUS, x_names=None,
                   d_names=None):
    """Assembles and validates a combined sample.

    Records keep their input order, reference rows first.

    Args:
        reference_rows: UnitRecords of S_R (z=0, pi_r present).
        nonprob_rows: UnitRecords of S_B (z=1, y present).
        population_size: optional known population size N.
        outcome_kind: common.OUTCOME_CONTINUOUS or common.OUTCOME_BINARY.
        x_names, d_names: optional column names for the x* layout.

    Raises:
        EmptySampleException: when either side is empty.
        DuplicateIdException: when an id occurs twice.
        MissingFieldException: when a required field is absent.
    """

    reference_rows = list(reference_rows)
    nonprob_rows = list(nonprob_rows)
    if not reference_rows:
        raise EmptySampleException('reference sample is empty')
    if not nonprob_rows:
        raise EmptySampleException('non-probability sample is empty')
    if outcome_kind not in common.OUTCOME_KINDS:
        raise ValueError('unknown outcome kind %r' % outcome_kind)
    if population_size is not None and population_size <= 0:
        raise ValueError('population_size must be positive')

    seen = set()
    for record in reference_rows + nonprob_rows:
        if record.id in seen:
            raise DuplicateIdException(
                'duplicate id %r' % (record.id,), record_id=record.id)
        seen.add(record.id)
    for record in reference_rows:
        _check_reference_row(record)
    for record in nonprob_rows:
        _check_nonprob_row(record)

    records = reference_rows + nonprob_rows

    p = None
    for record in records:
        if record.x is None:
            raise MissingFieldException('x', row=record.id)
        if p is None:
            p = len(record.x)
        elif len(record.x) != p:
            raise MissingFieldException('x', row=record.id)
    x = np.array([record.x for record in records], dtype=float)
    x = x.reshape(len(records), p)

    d = None
    with_d = [record.d is not None for record in records]
    if any(with_d):
        q = None
        for record in records:
            if record.d is None:
                continue
            if q is None:
                q = len(record.d)
            elif len(record.d) != q:
                raise MissingFieldException('d', row=record.id)
        d = np.full((len(records), q), np.nan)
        for i, record in enumerate(records):
            if record.d is not None:
                d[i] = record.d

    z = np.array([record.z for record in records], dtype=int)
    y = np.array([np.nan if record.y is None else record.y
                  for record in records])
    pi_r = np.array([np.nan if record.pi_r is None else record.pi_r
                     for record in records])
    if outcome_kind == common.OUTCOME_BINARY:
        observed = y[~np.isnan(y)]
        if not np.all((observed == 0.0) | (observed == 1.0)):
            raise InvalidRecordException('binary outcome must be coded 0/1')

    if x_names is None:
        x_names = tuple('x_%d' % (j + 1) for j in range(p))
    if d_names is None and d is not None:
        d_names = tuple('d_%d' % (j + 1) for j in range(d.shape[1]))
    layout = XStarLayout(tuple(x_names), tuple(d_names or ()))

    sample = CombinedSample([record.id for record in records],
                            [record.cluster_id for record in records],
                            population_size, layout, outcome_kind,
                            x, d, z, y, pi_r, records=records)
    _LOGGER.debug('Built %r', sample)
    return sample


def take(sample, index, ids, cluster_labels=None, pi_r=None):
    """Builds a sample from rows of another one, e.g. a bootstrap replicate.

    Args:
        sample: source CombinedSample.
        index: row positions to take; repeats are allowed.
        ids: new unique ids, one per taken row.
        cluster_labels: optional new cluster labels.
        pi_r: optional replacement inclusion probabilities.
    """

    index = np.asarray(index, dtype=int)
    if len(ids) != len(index):
        raise common.LengthMismatchException(
            'ids', expected=len(index), actual=len(ids))
    if len(set(ids)) != len(ids):
        raise DuplicateIdException('replicate ids are not unique')
    if cluster_labels is None:
        source = sample.cluster_labels
        cluster_labels = [source[i] for i in index]
    z = sample.z[index]
    if not np.any(z == common.Z_NONPROB) or not np.any(
            z == common.Z_REFERENCE):
        raise EmptySampleException('taken rows miss one of the samples')
    if pi_r is None:
        pi_r = sample.pi_r[index]
    d = sample.d[index] if sample.d is not None else None
    return CombinedSample(ids, cluster_labels, sample.population_size,
                          sample.x_star_layout, sample.outcome_kind,
                          sample.x[index], d, z, sample.y[index],
                          np.asarray(pi_r, dtype=float))


def design_matrix(sample, which=common.COVARIATES_XSTAR, intercept=True,
                  features=None):
    """Returns the design matrix for the requested covariates.

    Column order is [intercept?, x columns, d columns].

    Args:
        sample: CombinedSample.
        which: common.COVARIATES_X, COVARIATES_D or COVARIATES_XSTAR.
        intercept: prepend a column of ones.
        features: optional callable (x, d) -> matrix producing working-model
                  features from the raw columns; d is an n x 0 matrix when
                  the sample has no design covariates.

    Raises:
        MissingFieldException: when a record lacks a requested covariate.
    """

    if which not in (common.COVARIATES_X, common.COVARIATES_D,
                     common.COVARIATES_XSTAR):
        raise ValueError('unknown covariate selection %r' % which)

    d = sample.d
    if which == common.COVARIATES_D and d is None:
        raise MissingFieldException('d')
    if d is not None and which != common.COVARIATES_X:
        missing = np.isnan(d).any(axis=1)
        if missing.any():
            row = int(np.flatnonzero(missing)[0])
            raise MissingFieldException('d', row=sample.ids[row])
    if d is None:
        d = np.empty((len(sample), 0))

    if features is not None:
        columns = util.as_matrix(features(np.asarray(sample.x),
                                          np.asarray(d)))
    elif which == common.COVARIATES_X:
        columns = np.asarray(sample.x)
    elif which == common.COVARIATES_D:
        columns = np.asarray(d)
    else:
        columns = np.hstack([sample.x, d])

    if intercept:
        columns = np.hstack([np.ones((columns.shape[0], 1)), columns])
    return np.ascontiguousarray(columns, dtype=float)


GroupSummary = collections.namedtuple(
    'GroupSummary', ['n', 'minimum', 'q25', 'median', 'q75', 'maximum',
                     'n_below_floor'])


PositivityReport = collections.namedtuple(
    'PositivityReport', ['floor', 'nonprob', 'reference', 'n_below_floor',
                         'ids_below_floor'])


def _summarize(values, floor):
    if len(values) == 0:
        return GroupSummary(0, np.nan, np.nan, np.nan, np.nan, np.nan, 0)
    q25, median, q75 = np.quantile(values, [0.25, 0.5, 0.75])
    return GroupSummary(len(values), float(values.min()), float(q25),
                        float(median), float(q75), float(values.max()),
                        int(np.sum(values < floor)))


def positivity_report(sample, propensities,
                      floor=common.DEFAULT_POSITIVITY_FLOOR):
    """Summarizes the overlap of propensity scores between the two samples.

    Args:
        sample: CombinedSample.
        propensities: P(Z=1|x*) aligned with the sample records.
        floor: probabilities below this value are counted.

    Raises:
        LengthMismatchException: when propensities do not align.
    """

    propensities = util.as_vector(propensities, 'propensities')
    if len(propensities) != len(sample):
        raise common.LengthMismatchException(
            'propensities', expected=len(sample), actual=len(propensities))
    if np.any((propensities <= 0.0) | (propensities >= 1.0)):
        raise ValueError('propensities must lie in (0, 1)')

    below = np.flatnonzero(propensities < floor)
    ids = sample.ids
    report = PositivityReport(
        floor,
        _summarize(propensities[sample.b_mask], floor),
        _summarize(propensities[sample.r_mask], floor),
        len(below),
        tuple(ids[i] for i in below))
    if report.n_below_floor:
        _LOGGER.warning('%d units have propensity below %g',
                        report.n_below_floor, floor)
    return report


# vi:sts=4 sw=4 et
