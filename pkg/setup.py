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


"""Set up script for pynonprob.
"""


import sys

from setuptools import setup


_PACKAGE_NAME = 'pynonprob'

if sys.version_info < (3, 8):
    sys.stderr.write('%s requires Python 3.8 or later.\n' % _PACKAGE_NAME)
    sys.exit(1)

setup(author='The pynonprob Authors',
      description=('Doubly robust estimation of population means from a '
                   'non-probability sample and a probability reference '
                   'sample.'),
      long_description=(
          'pynonprob combines a non-probability sample with a probability '
          'reference sample through pseudo-weighting, prediction models and '
          'augmented inverse propensity weighting, with frequentist, '
          'Bayesian and BART working models and a simulation harness. '
          'See pynonprob/__init__.py for more detail.'),
      license='See COPYING',
      name=_PACKAGE_NAME,
      packages=[_PACKAGE_NAME, _PACKAGE_NAME + '.glm',
                _PACKAGE_NAME + '.bart'],
      install_requires=['numpy>=1.17', 'scipy>=1.4', 'pandas>=1.0'],
      python_requires='>=3.8',
      entry_points={
          'console_scripts': [
              'pynonprob = pynonprob.standalone:main',
          ],
      },
      version='0.1.0',
      )


# vi:sts=4 sw=4 et
