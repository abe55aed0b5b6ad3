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


"""CSV ingestion of combined-sample files and JSON estimate reports.

Input files have a header row. Reserved columns are id, cluster, y, pi_r and
z; columns prefixed x_ are analysis covariates and columns prefixed d_ design
covariates. An empty cell is an absent optional field. Row numbers in errors
are file line numbers, the header being line 1.
"""


import collections
import json
import logging

import numpy as np
import pandas as pd

from pynonprob import common
from pynonprob import sample as sample_module


_LOGGER = logging.getLogger(__name__)

COLUMN_ID = 'id'
COLUMN_CLUSTER = 'cluster'
COLUMN_Y = 'y'
COLUMN_PI_R = 'pi_r'
COLUMN_Z = 'z'
RESERVED_COLUMNS = (COLUMN_ID, COLUMN_CLUSTER, COLUMN_Y, COLUMN_PI_R,
                    COLUMN_Z)
X_PREFIX = 'x_'
D_PREFIX = 'd_'


class CsvParseException(common.NonProbException):
    """A CSV cell or header cannot be parsed."""

    def __init__(self, name, row=None, column=None):
        super(CsvParseException, self).__init__(name)
        self.row = row
        self.column = column


CsvTable = collections.namedtuple(
    'CsvTable', ['records', 'x_names', 'd_names'])


def _line(position):
    return position + 2


def _float_cell(frame, position, column, path):
    text = frame[column].iat[position].strip()
    if not text:
        return None
    try:
        return float(text)
    except ValueError:
        raise CsvParseException(
            '%s line %d: column %r: cannot parse %r as a number' %
            (path, _line(position), column, text),
            row=_line(position), column=column)


def _vector(frame, position, columns, path):
    values = [_float_cell(frame, position, column, path)
              for column in columns]
    if not columns:
        return None
    if all(value is None for value in values):
        return None
    for column, value in zip(columns, values):
        if value is None:
            raise sample_module.MissingFieldException(
                column, row=_line(position))
    return values


def read_sample_csv(path, z):
    """Reads one sample file into UnitRecords.

    Args:
        path: CSV file path.
        z: common.Z_REFERENCE for an S_R file, common.Z_NONPROB for S_B. A z
           column, when present, must agree with it.

    Raises:
        CsvParseException: for unreadable files or malformed cells.
        MissingFieldException: when a required column or cell is absent.
    """

    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False,
                            skipinitialspace=True)
    except (IOError, pd.errors.ParserError,
            pd.errors.EmptyDataError) as e:
        raise CsvParseException('%s: %s' % (path, e))
    frame.columns = [str(column).strip() for column in frame.columns]
    if COLUMN_ID not in frame.columns:
        raise sample_module.MissingFieldException(COLUMN_ID)
    required = COLUMN_PI_R if z == common.Z_REFERENCE else COLUMN_Y
    if required not in frame.columns:
        raise sample_module.MissingFieldException(required)
    x_names = [c for c in frame.columns if c.startswith(X_PREFIX)]
    d_names = [c for c in frame.columns if c.startswith(D_PREFIX)]
    if not x_names:
        raise sample_module.MissingFieldException(X_PREFIX + '*')
    unknown = [c for c in frame.columns if c not in RESERVED_COLUMNS and
               c not in x_names and c not in d_names]
    if unknown:
        raise CsvParseException('%s: unknown columns %r' % (path, unknown),
                                row=1, column=unknown[0])

    records = []
    for position in range(len(frame)):
        record_id = frame[COLUMN_ID].iat[position].strip()
        if not record_id:
            raise sample_module.MissingFieldException(
                COLUMN_ID, row=_line(position))
        if COLUMN_Z in frame.columns:
            row_z = _float_cell(frame, position, COLUMN_Z, path)
            if row_z is not None and row_z != z:
                raise CsvParseException(
                    '%s line %d: z=%g in a file of z=%d rows' %
                    (path, _line(position), row_z, z),
                    row=_line(position), column=COLUMN_Z)
        cluster = None
        if COLUMN_CLUSTER in frame.columns:
            cluster = frame[COLUMN_CLUSTER].iat[position].strip() or None
        y = _float_cell(frame, position, COLUMN_Y, path) \
            if COLUMN_Y in frame.columns else None
        pi_r = _float_cell(frame, position, COLUMN_PI_R, path) \
            if COLUMN_PI_R in frame.columns else None
        x = _vector(frame, position, x_names, path)
        if x is None:
            raise sample_module.MissingFieldException(
                x_names[0], row=_line(position))
        try:
            records.append(sample_module.UnitRecord(
                record_id, x, z, y=y, pi_r=pi_r,
                d=_vector(frame, position, d_names, path),
                cluster_id=cluster))
        except sample_module.InvalidRecordException as e:
            raise CsvParseException('%s line %d: %s' %
                                    (path, _line(position), e),
                                    row=_line(position))
    _LOGGER.debug('Read %d rows from %s', len(records), path)
    return CsvTable(records, x_names, d_names)


def read_combined(reference_path, nonprob_path, population_size=None,
                  outcome_kind=common.OUTCOME_CONTINUOUS):
    """Reads an S_R file and an S_B file into a CombinedSample.

    Raises:
        CsvParseException: when the files disagree on covariate columns.
    """

    reference = read_sample_csv(reference_path, common.Z_REFERENCE)
    nonprob = read_sample_csv(nonprob_path, common.Z_NONPROB)
    if reference.x_names != nonprob.x_names:
        raise CsvParseException(
            'x columns differ: %r in %s, %r in %s' %
            (reference.x_names, reference_path, nonprob.x_names,
             nonprob_path), row=1)
    if reference.d_names != nonprob.d_names:
        raise CsvParseException(
            'd columns differ: %r in %s, %r in %s' %
            (reference.d_names, reference_path, nonprob.d_names,
             nonprob_path), row=1)
    # y may be present in an S_R file; it is never used.
    reference_records = [record._replace(y=None)
                         for record in reference.records]
    return sample_module.build_combined(
        reference_records, nonprob.records, population_size=population_size,
        outcome_kind=outcome_kind, x_names=reference.x_names,
        d_names=reference.d_names or None)


def _jsonable(value):
    if isinstance(value, dict):
        return collections.OrderedDict(
            (str(k), _jsonable(v)) for k, v in sorted(value.items()))
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if np.isnan(value) or np.isinf(value) else value
    return value


def report_json(report, variance_report=None):
    """The versioned JSON document of one EstimateReport.

    NaN and infinite numbers become null.
    """

    document = collections.OrderedDict([
        ('schema_version', common.REPORT_SCHEMA_VERSION),
        ('method', report.method),
        ('point', _jsonable(report.point)),
        ('se', _jsonable(report.se)),
        ('ci95', _jsonable(list(report.ci95))),
        ('n_draws_or_boot', int(report.n_draws_or_boot)),
        ('variance', None),
        ('diagnostics', _jsonable(report.diagnostics)),
    ])
    if variance_report is not None:
        document['variance'] = collections.OrderedDict([
            ('estimator', variance_report.estimator),
            ('variance', _jsonable(variance_report.variance)),
            ('components', _jsonable(variance_report.components)),
        ])
    return document


def dumps_reports(documents):
    """Serializes one report document, or a list of them, to text."""

    if len(documents) == 1:
        documents = documents[0]
    return json.dumps(documents, indent=2) + '\n'


# vi:sts=4 sw=4 et
