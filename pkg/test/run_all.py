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

"""Run the pynonprob unit tests.

Run from the source checkout root, the directory holding pynonprob and test:
    python test/run_all.py --log-level debug

Name modules to run a subset:
    python test/run_all.py test_glm test_bart

--slow also runs the long simulation tables of test_acceptance (the same as
setting PYNONPROB_SLOW=1). Options after '--' go to unittest, e.g.
    python test/run_all.py -- -v
"""


import logging
import optparse
import os
import sys
import unittest


_FINE = 9


def _test_module_names(directory, selected):
    names = sorted(filename[:-len('.py')]
                   for filename in os.listdir(directory)
                   if filename.startswith('test_') and filename.endswith('.py'))
    if not selected:
        return names
    unknown = sorted(set(selected) - set(names))
    if unknown:
        raise SystemExit('unknown test modules: %s' % ', '.join(unknown))
    return [name for name in names if name in selected]


def _main():
    directory = os.path.dirname(os.path.abspath(__file__))
    sys.path.insert(0, directory)

    parser = optparse.OptionParser(usage='%prog [options] [module ...]')
    parser.add_option('--log-level', '--log_level', type='choice',
                      dest='log_level', default='warning',
                      choices=['fine', 'debug', 'info', 'warning', 'warn',
                               'error', 'critical'])
    parser.add_option('--slow', dest='slow', action='store_true',
                      default=False,
                      help='also run the long simulation acceptance tables')
    options, args = parser.parse_args()
    if '--' in sys.argv:
        unittest_args = sys.argv[sys.argv.index('--') + 1:]
        args = args[:len(args) - len(unittest_args)]
    else:
        unittest_args = []

    if options.slow:
        os.environ['PYNONPROB_SLOW'] = '1'
    logging.addLevelName(_FINE, 'FINE')
    level = _FINE if options.log_level == 'fine' else \
        logging.getLevelName(options.log_level.upper())
    logging.basicConfig(level=level)

    suite = unittest.TestLoader().loadTestsFromNames(
        _test_module_names(directory, args))
    unittest.main(defaultTest='suite', argv=[sys.argv[0]] + unittest_args,
                  module=_SuiteHolder(suite))


class _SuiteHolder(object):

    def __init__(self, suite):
        self.suite = suite


if __name__ == '__main__':
    _main()


# vi:sts=4 sw=4 et
