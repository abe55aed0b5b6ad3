#!/usr/bin/env python
#
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


"""Tests for csvio module."""


import json
import os
import shutil
import tempfile
import unittest

import numpy as np

import set_sys_path  # Update sys.path to locate pynonprob module.

from pynonprob import aipw
from pynonprob import common
from pynonprob import csvio
from pynonprob import sample as sample_module
from pynonprob import variance


_REFERENCE = """id,pi_r,x_1,x_2,d_1
r1,0.5,1.0,2.0,3.0
r2,0.25,2.0,3.0,4.0
"""

_NONPROB = """id,y,pi_r,x_1,x_2,d_1,cluster
b1,10.0,0.1,1.5,2.5,3.5,c1
b2,12.0,,2.5,3.5,4.5,
"""


class _TemporaryFilesTestCase(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def _write(self, name, text):
        path = os.path.join(self.directory, name)
        with open(path, 'w') as f:
            f.write(text)
        return path


class ReadSampleCsvTest(_TemporaryFilesTestCase):
    """A unittest for read_sample_csv."""

    def test_reference(self):
        table = csvio.read_sample_csv(self._write('r.csv', _REFERENCE),
                                      common.Z_REFERENCE)
        self.assertEqual(['x_1', 'x_2'], table.x_names)
        self.assertEqual(['d_1'], table.d_names)
        self.assertEqual(2, len(table.records))
        record = table.records[1]
        self.assertEqual('r2', record.id)
        self.assertEqual(0.25, record.pi_r)
        self.assertEqual((2.0, 3.0), record.x)
        self.assertEqual((4.0,), record.d)
        self.assertEqual(None, record.y)

    def test_empty_cells_are_absent(self):
        table = csvio.read_sample_csv(self._write('b.csv', _NONPROB),
                                      common.Z_NONPROB)
        first, second = table.records
        self.assertEqual('c1', first.cluster_id)
        self.assertEqual(0.1, first.pi_r)
        self.assertEqual(None, second.cluster_id)
        self.assertEqual(None, second.pi_r)
        self.assertEqual(12.0, second.y)

    def test_missing_required_columns(self):
        try:
            csvio.read_sample_csv(self._write('r.csv', 'id,x_1\nr1,1.0\n'),
                                  common.Z_REFERENCE)
            self.fail('MissingFieldException not raised')
        except sample_module.MissingFieldException as e:
            self.assertEqual('pi_r', e.field)
        self.assertRaises(sample_module.MissingFieldException,
                          csvio.read_sample_csv,
                          self._write('b.csv', 'id,x_1\nb1,1.0\n'),
                          common.Z_NONPROB)
        self.assertRaises(sample_module.MissingFieldException,
                          csvio.read_sample_csv,
                          self._write('n.csv', 'pi_r,x_1\n0.5,1.0\n'),
                          common.Z_REFERENCE)
        self.assertRaises(sample_module.MissingFieldException,
                          csvio.read_sample_csv,
                          self._write('x.csv', 'id,pi_r\nr1,0.5\n'),
                          common.Z_REFERENCE)

    def test_missing_cell_names_line(self):
        try:
            csvio.read_sample_csv(
                self._write('r.csv', 'id,pi_r,x_1,x_2\nr1,0.5,1,2\n'
                            'r2,0.5,1,\n'),
                common.Z_REFERENCE)
            self.fail('MissingFieldException not raised')
        except sample_module.MissingFieldException as e:
            self.assertEqual('x_2', e.field)
            self.assertEqual(3, e.row)

    def test_unknown_column(self):
        try:
            csvio.read_sample_csv(
                self._write('r.csv', 'id,pi_r,x_1,weight\nr1,0.5,1,2\n'),
                common.Z_REFERENCE)
            self.fail('CsvParseException not raised')
        except csvio.CsvParseException as e:
            self.assertEqual('weight', e.column)
            self.assertEqual(1, e.row)

    def test_bad_number(self):
        try:
            csvio.read_sample_csv(
                self._write('r.csv', 'id,pi_r,x_1\nr1,0.5,1\nr2,half,2\n'),
                common.Z_REFERENCE)
            self.fail('CsvParseException not raised')
        except csvio.CsvParseException as e:
            self.assertEqual(3, e.row)
            self.assertEqual('pi_r', e.column)

    def test_z_disagrees(self):
        self.assertRaises(
            csvio.CsvParseException, csvio.read_sample_csv,
            self._write('r.csv', 'id,z,pi_r,x_1\nr1,1,0.5,1\n'),
            common.Z_REFERENCE)

    def test_invalid_record_names_line(self):
        try:
            csvio.read_sample_csv(
                self._write('r.csv', 'id,pi_r,x_1\nr1,0.5,1\nr2,1.5,2\n'),
                common.Z_REFERENCE)
            self.fail('CsvParseException not raised')
        except csvio.CsvParseException as e:
            self.assertEqual(3, e.row)

    def test_missing_file(self):
        self.assertRaises(csvio.CsvParseException, csvio.read_sample_csv,
                          os.path.join(self.directory, 'absent.csv'),
                          common.Z_REFERENCE)


class ReadCombinedTest(_TemporaryFilesTestCase):
    """A unittest for read_combined."""

    def test_combined(self):
        combined = csvio.read_combined(self._write('r.csv', _REFERENCE),
                                       self._write('b.csv', _NONPROB),
                                       population_size=40)
        self.assertEqual(['r1', 'r2', 'b1', 'b2'], combined.ids)
        self.assertEqual(('x_1', 'x_2'),
                         tuple(combined.x_star_layout.x_names))
        np.testing.assert_array_equal([10.0, 12.0], combined.y_b)
        self.assertEqual(40.0, combined.estimated_population_size())

    def test_reference_y_is_ignored(self):
        reference = 'id,y,pi_r,x_1\nr1,99,0.5,1\n'
        nonprob = 'id,y,x_1\nb1,1,1\n'
        combined = csvio.read_combined(self._write('r.csv', reference),
                                       self._write('b.csv', nonprob))
        self.assertTrue(np.isnan(combined.y[0]))

    def test_covariate_columns_differ(self):
        self.assertRaises(csvio.CsvParseException, csvio.read_combined,
                          self._write('r.csv', _REFERENCE),
                          self._write('b.csv', 'id,y,x_1,d_1\nb1,1,1,1\n'))


class ReportJsonTest(unittest.TestCase):
    """A unittest for report_json and dumps_reports."""

    def test_nan_becomes_null(self):
        report = aipw.make_report('PM', 2.5, variance_value=-1.0)
        document = csvio.report_json(report)
        self.assertEqual(common.REPORT_SCHEMA_VERSION,
                         document['schema_version'])
        self.assertEqual(None, document['se'])
        self.assertEqual([None, None], document['ci95'])
        self.assertEqual(None, document['variance'])
        text = csvio.dumps_reports([document])
        self.assertEqual(2.5, json.loads(text)['point'])

    def test_variance_section(self):
        report = aipw.make_report('PM', 2.0, variance_value=0.25)
        variance_report = variance.VarianceReport(
            'pm', 0.25, {'design': 0.2, 'model': np.float64(0.05)})
        document = csvio.report_json(report, variance_report)
        self.assertEqual('pm', document['variance']['estimator'])
        self.assertEqual(['design', 'model'],
                         list(document['variance']['components']))
        self.assertAlmostEqual(0.5, document['se'])

    def test_several_reports_make_a_list(self):
        documents = [csvio.report_json(aipw.make_report('PM', 1.0)),
                     csvio.report_json(aipw.make_report('PAPW', 2.0))]
        parsed = json.loads(csvio.dumps_reports(documents))
        self.assertEqual(['PM', 'PAPW'], [d['method'] for d in parsed])


if __name__ == '__main__':
    unittest.main()


# vi:sts=4 sw=4 et
