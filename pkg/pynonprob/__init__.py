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


"""Population means from a non-probability sample and a reference sample.

pynonprob estimates the finite-population mean of an outcome y observed only
in a non-probability sample S_B (e.g. a large administrative or web sample
whose selection mechanism is unknown) with the help of a probability
reference sample S_R that shares the covariates x but not y, and whose
inclusion probabilities pi_r are known.


Estimators
==========

Quasi-randomization (pseudoweight module) estimates a pseudo-inclusion
probability pi^B for every S_B unit and takes a weighted mean of y:

    IPSW  pseudo maximum likelihood propensity score weighting
    PAPW  propensity adjusted probability weighting; needs pi_r on S_B rows
    PAPP  propensity adjusted probability prediction; pi_r of S_B rows is
          predicted from a beta regression fitted on S_R

Prediction modelling (aipw module, PM) fits E(y|x*) on S_B and averages the
predictions over S_R with the design weights.

The augmented inverse propensity weighted estimator (aipw module) combines
the two and stays consistent when either working model is correct. It is
available as a plug-in of separately fitted models, with both models solved
jointly, and as a two-step Bayesian estimator over posterior draws of GLM or
BART working models.

Variances (variance module): sandwich for PAPW, the doubly robust variance
for the plug-in AIPW, Rao-Wu rescaling bootstrap, and Rubin's combining
rules over posterior draws.


Using the library
=================

    from pynonprob import csvio
    from pynonprob import dispatch

    sample = csvio.read_combined('reference.csv', 'nonprob.csv')
    options = dispatch.EstimateOptions(variance='default')
    context = dispatch.EstimationContext(sample, options)
    result = dispatch.Dispatcher().estimate(context, 'AIPW-PAPW')
    print(result.report.point, result.report.ci95)

An EstimationContext fits every working model at most once, so several
methods run on the same context share their fits. Every random stream is
derived from options.seed.


Simulation studies
==================

The simulation module generates three synthetic populations (sim1, sim2 and
sim3) with their sampling designs and correct or misspecified working
models. The harness module runs K replications and summarizes relative bias,
relative RMSE, 95% interval coverage and the SE ratio of every method. See
standalone.py for the command line.


Logging
=======

Library code logs through the standard logging module and never installs
handlers. Per-iteration traces use the FINE level (common.LOGLEVEL_FINE).
"""


# vi:sts=4 sw=4 et
