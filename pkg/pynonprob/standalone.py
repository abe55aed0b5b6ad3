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
"""Command line front end of pynonprob.


BASIC USAGE

  $ pynonprob simulate --scenario sim1 --rho 0.5 --k 10 --seed 1 -o out.csv
  $ pynonprob estimate --reference r.csv --nonprob b.csv --method aipw-papw
  $ pynonprob export --scenario sim1 --rho 0.5 --seed 1 -o samples/

simulate runs K replications of a synthetic scenario and writes the metrics
table (CSV header method,spec,rbias,rmse,crci,rse,k_eff, or JSON with
--format json). estimate runs one or more estimators on a reference sample
file and a non-probability sample file and writes a JSON report. export
draws one pair of samples from a synthetic scenario and writes them in the
CSV layout estimate reads.

For all options of a command, run

  $ pynonprob <command> --help

For trouble shooting, adding "--log-level debug" might help you.


INPUT FILES

Header row; reserved columns id, cluster, y, pi_r, z; x_* columns are
analysis covariates and d_* columns design covariates. An empty cell is an
absent optional field. The reference file needs pi_r on every row; the
non-probability file needs y on every row, and pi_r when PAPW is used.


CONFIGURATION FILE

Options may be written to a configuration file passed with --config. Entries
live in a [pynonprob] section and are named after the long option, with
dashes or underscores. E.g.

  [pynonprob]
  scenario = sim2
  fk = SQR
  log_level = debug
  fixed_population = true

Flags without a value are written as true or false. Command line values
override the file.


EXIT STATUS

0 on success, 1 on a usage, configuration or input error (no output is
written), 2 when simulate aborted some table cells.
"""


import configparser
import logging
import logging.handlers
import optparse
import os
import sys
import tempfile

from pynonprob import aipw
from pynonprob import common
from pynonprob import csvio
from pynonprob import dispatch
from pynonprob import harness
from pynonprob import pseudoweight
from pynonprob import sample as sample_module
from pynonprob import simulation
from pynonprob import util
from pynonprob import variance
from pynonprob.glm import mcmc
from pynonprob.bart import dump as bart_dump
from pynonprob.bart import sampler


COMMAND_SIMULATE = 'simulate'
COMMAND_ESTIMATE = 'estimate'
COMMAND_EXPORT = 'export'
COMMANDS = (COMMAND_SIMULATE, COMMAND_ESTIMATE, COMMAND_EXPORT)

_CONFIG_SECTION = 'pynonprob'
_LOG_LEVELS = ('fine', 'debug', 'info', 'warning', 'warn', 'error',
               'critical')
_TRUE_VALUES = ('true', 'yes', 'on', '1')
_FALSE_VALUES = ('false', 'no', 'off', '0')

_DEFAULT_K = 500
_DEFAULT_K_BART = 100

MODEL_GLM = 'glm'
MODEL_BART = 'bart'

_COVARIATES = {'x': common.COVARIATES_X, 'd': common.COVARIATES_D,
               'xstar': common.COVARIATES_XSTAR}
_NORMALIZATIONS = {'hajek': common.NORMALIZATION_HAJEK,
                   'known-n': common.NORMALIZATION_KNOWN_N}

# Hints logged with route-requirement errors.
_REMEDIATION = (
    (aipw.MissingNException,
     'pass --population-size or use --normalization hajek'),
    (aipw.MissingPirDrawsException,
     'PAPP under posterior draws needs a pi_r model; check the reference '
     'file has pi_r on every row'),
    (pseudoweight.OutOfRangeException,
     'pseudo-inclusion probabilities left (0, 1); try PAPP or a smaller '
     'propensity model'),
    (variance.SingularMatrixException,
     'the variance design is singular; drop collinear covariates or use '
     '--variance bootstrap'),
)

_handler = None


class _OptionParser(optparse.OptionParser):
    """OptionParser raising ConfigException instead of exiting."""

    def error(self, msg):
        raise harness.ConfigException(msg)


def _configure_logging(options):
    global _handler

    logging.addLevelName(common.LOGLEVEL_FINE, 'FINE')

    logger = logging.getLogger()
    logger.setLevel(logging.getLevelName(options.log_level.upper()))
    if _handler is not None:
        logger.removeHandler(_handler)
        _handler.close()
    if options.log_file:
        handler = logging.handlers.RotatingFileHandler(
            options.log_file, 'a', options.log_max, options.log_count)
    else:
        handler = logging.StreamHandler()
    formatter = logging.Formatter(
        '[%(asctime)s] [%(levelname)s] %(name)s: %(message)s')
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    _handler = handler

    mcmc_log_level_name = logging.getLevelName(
        options.mcmc_log_level.upper())
    logging.getLogger(mcmc.__name__).setLevel(mcmc_log_level_name)
    logging.getLogger(sampler.__name__).setLevel(mcmc_log_level_name)
    util.get_logger_from_class(sampler.BackfittingSampler).setLevel(
        mcmc_log_level_name)


def _add_common_options(parser):
    parser.add_option('--config', dest='config_file', type='string',
                      default=None,
                      help=('Path to configuration file. See the module '
                            'documentation for the file format'))
    parser.add_option('--seed', dest='seed', type='int', default=0,
                      help='top-level seed of every random stream')
    parser.add_option('-o', '--output', dest='output', default=None,
                      help='output path; standard output when omitted')
    parser.add_option('--m', dest='M', type='int', default=common.DEFAULT_M,
                      help='posterior draws used per estimate')
    parser.add_option('--burn-in', '--burn_in', dest='burn_in', type='int',
                      default=common.DEFAULT_BURN_IN,
                      help='MCMC burn-in iterations')
    parser.add_option('--n-kept', '--n_kept', dest='n_kept', type='int',
                      default=common.DEFAULT_KEPT_DRAWS,
                      help='MCMC draws kept after burn-in')
    parser.add_option('--b', dest='B', type='int',
                      default=common.DEFAULT_BOOTSTRAP_B,
                      help='bootstrap replicates')
    parser.add_option('--normalization', dest='normalization',
                      type='choice', choices=sorted(_NORMALIZATIONS),
                      default='hajek',
                      help='AIPW normalization: hajek or known-n')
    parser.add_option('--joint', dest='joint', action='store_true',
                      default=False,
                      help=('solve the AIPW propensity and outcome models '
                            'jointly instead of plugging in separate fits'))
    parser.add_option('--log-file', '--log_file', dest='log_file',
                      default='', help='Log file.')
    parser.add_option('--log-level', '--log_level', type='choice',
                      dest='log_level', default='warn',
                      choices=_LOG_LEVELS, help='Log level.')
    parser.add_option('--mcmc-log-level', '--mcmc_log_level',
                      type='choice', dest='mcmc_log_level', default='warn',
                      choices=_LOG_LEVELS,
                      help='Log level for the MCMC samplers.')
    parser.add_option('--log-max', '--log_max', dest='log_max', type='int',
                      default=256 * 1024,
                      help='Log maximum bytes')
    parser.add_option('--log-count', '--log_count', dest='log_count',
                      type='int', default=4, help='Log backup count')


def _add_scenario_options(parser):
    parser.add_option('--scenario', dest='scenario', default=simulation.SIM1,
                      help='sim1, sim2 or sim3')
    parser.add_option('--rho', dest='rho', type='float', default=0.5,
                      help='scenario correlation parameter')
    parser.add_option('--fk', dest='fk', default=simulation.FK_SIN,
                      help='sim2 covariate function: SIN, EXP or SQR')
    parser.add_option('--population-size', '--population_size',
                      dest='population_size', type='int', default=None,
                      help='sim1/sim2 population size')
    parser.add_option('--clusters', dest='clusters', type='int',
                      default=None, help='sim3 number of clusters')
    parser.add_option('--cluster-size', '--cluster_size',
                      dest='cluster_size', type='int', default=None,
                      help='sim3 units per cluster')
    parser.add_option('--n-r', '--n_r', dest='n_r', type='int', default=100,
                      help='expected reference sample size (sim3: PSUs)')
    parser.add_option('--n-b', '--n_b', dest='n_b', type='int', default=None,
                      help='expected non-probability sample size')
    parser.add_option('--outcome', dest='outcome', default=None,
                      help='outcome column: y, or yc/yb for sim3')


def _build_option_parser(command):
    parser = _OptionParser(usage='%%prog %s [options]' % command)
    _add_common_options(parser)
    if command in (COMMAND_SIMULATE, COMMAND_EXPORT):
        _add_scenario_options(parser)
    if command == COMMAND_SIMULATE:
        parser.add_option('--k', dest='k', type='int', default=None,
                          help=('replications; %d by default, %d with the '
                                'bart approach' %
                                (_DEFAULT_K, _DEFAULT_K_BART)))
        parser.add_option('--jobs', dest='jobs', type='int', default=1,
                          help='worker processes')
        parser.add_option('--approach', dest='approach',
                          default=dispatch.APPROACH_FREQUENTIST,
                          help='frequentist, bayes, bart or bootstrap')
        parser.add_option('--methods', dest='methods', default=None,
                          help='comma separated method tags')
        parser.add_option('--specs', dest='specs', default=None,
                          help='comma separated model specs: TT,TF,FT,FF')
        parser.add_option('--fixed-population', '--fixed_population',
                          dest='fixed_population', action='store_true',
                          default=False,
                          help='draw one population for all replications')
        parser.add_option('--format', dest='format', type='choice',
                          choices=('csv', 'json'), default='csv',
                          help='table format')
    elif command == COMMAND_ESTIMATE:
        parser.add_option('--reference', dest='reference', default=None,
                          help='reference sample CSV')
        parser.add_option('--nonprob', dest='nonprob', default=None,
                          help='non-probability sample CSV')
        parser.add_option('--population-size', '--population_size',
                          dest='population_size', type='int', default=None,
                          help='known population size N')
        parser.add_option('--outcome-kind', '--outcome_kind',
                          dest='outcome_kind', type='choice',
                          choices=common.OUTCOME_KINDS,
                          default=common.OUTCOME_CONTINUOUS,
                          help='continuous or binary')
        parser.add_option('--method', dest='method', default=None,
                          help='comma separated method tags')
        parser.add_option('--variance', dest='variance', type='choice',
                          choices=dispatch.VARIANCES,
                          default=dispatch.VARIANCE_DEFAULT,
                          help='variance estimator')
        parser.add_option('--model', dest='model', type='choice',
                          choices=(MODEL_GLM, MODEL_BART), default=MODEL_GLM,
                          help='working model family: glm or bart')
        parser.add_option('--qr-covariates', '--qr_covariates',
                          dest='qr_covariates', type='choice',
                          choices=sorted(_COVARIATES), default='xstar',
                          help='PAPW propensity covariates: x, d or xstar')
        parser.add_option('--pmle-covariates', '--pmle_covariates',
                          dest='pmle_covariates', type='choice',
                          choices=sorted(_COVARIATES), default='x',
                          help='IPSW propensity covariates: x, d or xstar')
        parser.add_option('--lwp', dest='lwp', action='store_true',
                          default=False,
                          help=('outcome model on [1, 1/pi_r] (linear in '
                                'the weights)'))
        parser.add_option('--within-form', '--within_form',
                          dest='within_form', type='choice',
                          choices=(variance.FORM_LINEARIZED,
                                   variance.FORM_DISPLAYED),
                          default=variance.FORM_DISPLAYED,
                          help='Bayesian AIPW within-draw variance form')
        parser.add_option('--weights-out', '--weights_out',
                          dest='weights_out', default=None,
                          help='write S_B pseudo-weights to this CSV')
        parser.add_option('--ensemble-out', '--ensemble_out',
                          dest='ensemble_out', default=None,
                          help='write the BART outcome ensemble here')
    else:
        parser.add_option('--pi-r-unknown', '--pi_r_unknown',
                          dest='pi_r_unknown', action='store_true',
                          default=False,
                          help='leave pi_r empty on non-probability rows')
    return parser


def _args_from_config(parser, path):
    config_parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, 'r') as config_fp:
            config_parser.read_file(config_fp)
    except IOError as e:
        raise harness.ConfigException(
            'Failed to open configuration file %r: %s' % (path, e),
            field='config')
    except configparser.Error as e:
        raise harness.ConfigException('%s: %s' % (path, e), field='config')
    if not config_parser.has_section(_CONFIG_SECTION):
        raise harness.ConfigException(
            '%s: no [%s] section' % (path, _CONFIG_SECTION), field='config')

    args_from_config = []
    for name, value in config_parser.items(_CONFIG_SECTION):
        option_name = '--' + name
        option = parser.get_option(option_name)
        if option is None or option.dest == 'config_file':
            raise harness.ConfigException(
                '%s: unknown key %r' % (path, name), field=name)
        if option.action == 'store_true':
            flag = value.strip().lower()
            if flag in _TRUE_VALUES:
                args_from_config.append(option_name)
            elif flag not in _FALSE_VALUES:
                raise harness.ConfigException(
                    '%s: %s must be true or false, got %r' %
                    (path, name, value), field=name)
            continue
        try:
            option.check_value(option_name, value)
        except optparse.OptionValueError as e:
            raise harness.ConfigException('%s: %s' % (path, e), field=name)
        args_from_config.append(option_name)
        args_from_config.append(value)
    return args_from_config


def _parse_args_and_config(args):
    """Returns (command, options).

    Raises:
        ConfigException: for an unknown command, bad option or bad file.
    """

    args = list(args or [])
    if not args or args[0] not in COMMANDS:
        raise harness.ConfigException(
            'expected a command; valid commands: %s' % ', '.join(COMMANDS),
            field='command')
    command = args.pop(0)
    parser = _build_option_parser(command)

    # First, parse options without configuration file.
    temporary_options, temporary_args = parser.parse_args(args=args)
    if temporary_args:
        raise harness.ConfigException(
            'Unrecognized positional arguments: %r' % temporary_args)

    if temporary_options.config_file:
        args = _args_from_config(parser,
                                 temporary_options.config_file) + args
        options, _ = parser.parse_args(args=args)
        return command, options
    return command, temporary_options


def _split(text):
    if text is None:
        return None
    return [part.strip() for part in text.split(',') if part.strip()]


def _check_output_path(path, field):
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory):
        raise harness.ConfigException(
            'no such directory for %s: %s' % (field, directory), field=field)
    if os.path.isdir(path):
        raise harness.ConfigException(
            '%s is a directory: %s' % (field, path), field=field)


def _write_all(outputs):
    """Writes (path, text or bytes) pairs; all of them or none.

    Each payload goes to a temporary file next to its target. The targets
    are replaced only after every temporary file is complete.
    """

    staged = []
    try:
        for path, payload in outputs:
            mode = 'wb' if isinstance(payload, bytes) else 'w'
            handle, temporary = tempfile.mkstemp(
                prefix='.pynonprob-', dir=os.path.dirname(
                    os.path.abspath(path)))
            staged.append((temporary, path))
            with os.fdopen(handle, mode) as f:
                f.write(payload)
    except (IOError, OSError):
        for temporary, _ in staged:
            if os.path.exists(temporary):
                os.remove(temporary)
        raise
    for temporary, path in staged:
        os.replace(temporary, path)


def _cmd_simulate(options):
    config = harness.ScenarioConfig(
        scenario=options.scenario, rho=options.rho, fk=options.fk,
        population_size=options.population_size, clusters=options.clusters,
        cluster_size=options.cluster_size, n_r=options.n_r,
        n_b=options.n_b, approach=options.approach,
        methods=_split(options.methods),
        specs=_split(options.specs) or harness.SPECS,
        outcome=options.outcome, M=options.M, burn_in=options.burn_in,
        n_kept=options.n_kept, B=options.B,
        fixed_population=options.fixed_population,
        normalization=_NORMALIZATIONS[options.normalization],
        joint=options.joint)
    K = options.k
    if K is None:
        K = _DEFAULT_K_BART if config.approach == dispatch.APPROACH_BART \
            else _DEFAULT_K
    if options.jobs < 1:
        raise harness.ConfigException('jobs must be positive', field='jobs')
    logging.info('pynonprob: simulate %s K=%d seed=%d jobs=%d',
                 config.scenario, K, options.seed, options.jobs)
    result = harness.run_replications(config, K, options.seed, options.jobs)

    target = options.output or sys.stdout
    if options.format == 'json':
        harness.write_json(result, target)
    else:
        harness.write_csv(result.rows, target)
    if result.aborted:
        logging.warning('pynonprob: %d cells aborted', len(result.aborted))
        return common.EXIT_PARTIAL_FAILURE
    return common.EXIT_OK


def _approach(options, methods):
    if options.model == MODEL_BART or any(
            dispatch.parse_method(method)[0] == 'BART'
            for method in methods):
        return dispatch.APPROACH_BART
    if options.variance == dispatch.VARIANCE_RUBIN:
        return dispatch.APPROACH_BAYES
    return dispatch.APPROACH_FREQUENTIST


def _cmd_estimate(options):
    if not options.reference or not options.nonprob:
        raise harness.ConfigException(
            'estimate needs --reference and --nonprob', field='reference')
    for field, path in (('reference', options.reference),
                        ('nonprob', options.nonprob)):
        if not os.path.isfile(path):
            raise harness.ConfigException('no such file: %s' % path,
                                          field=field)
    methods = _split(options.method)
    if not methods:
        raise harness.ConfigException('estimate needs --method',
                                      field='method')
    if options.weights_out and len(methods) != 1:
        raise harness.ConfigException(
            '--weights-out needs exactly one method', field='weights_out')
    approach = _approach(options, methods)
    if options.ensemble_out and approach != dispatch.APPROACH_BART:
        raise harness.ConfigException(
            '--ensemble-out needs --model bart', field='ensemble_out')
    for field, path in (('output', options.output),
                        ('weights_out', options.weights_out),
                        ('ensemble_out', options.ensemble_out)):
        if path:
            _check_output_path(path, field)
    estimate_options = dispatch.EstimateOptions(
        approach=approach, variance=options.variance,
        normalization=_NORMALIZATIONS[options.normalization], M=options.M,
        burn_in=options.burn_in, n_kept=options.n_kept, B=options.B,
        seed=options.seed, joint=options.joint, lwp=options.lwp,
        qr_covariates=_COVARIATES[options.qr_covariates],
        pmle_covariates=_COVARIATES[options.pmle_covariates],
        within_form=options.within_form)
    dispatcher = dispatch.Dispatcher()
    for method in methods:
        dispatcher.variance_for(method, estimate_options)

    try:
        sample = csvio.read_combined(
            options.reference, options.nonprob,
            population_size=options.population_size,
            outcome_kind=options.outcome_kind)
    except common.NonProbException as e:
        util.prepend_message_to_exception('input: ', e)
        raise
    context = dispatch.EstimationContext(sample, estimate_options)
    results = [dispatcher.estimate(context, method) for method in methods]

    weights = None
    if options.weights_out:
        if results[0].pseudo is None:
            raise harness.ConfigException(
                '%s has no pseudo-weights' % methods[0],
                field='weights_out')
        weights = pseudoweight.export_weights(sample, results[0].pseudo)
    ensemble = None
    if options.ensemble_out:
        ensemble = context.bart_fits.get(dispatch.ROLE_PM)
        if ensemble is None:
            raise harness.ConfigException(
                'no BART outcome ensemble was fitted', field='ensemble_out')

    text = csvio.dumps_reports([
        csvio.report_json(result.report, result.variance)
        for result in results])
    outputs = []
    if weights is not None:
        outputs.append((options.weights_out,
                        weights.to_csv(index=False, float_format='%.17g')))
    if ensemble is not None:
        outputs.append((options.ensemble_out, bart_dump.dumps(ensemble)))
    if options.output:
        outputs.append((options.output, text))
    _write_all(outputs)
    if not options.output:
        sys.stdout.write(text)
    return common.EXIT_OK


def _cmd_export(options):
    if not options.output:
        raise harness.ConfigException('export needs -o DIRECTORY',
                                      field='output')
    population = simulation.generate(
        options.scenario, options.seed, options.rho,
        N=options.population_size, fk_name=options.fk,
        A=options.clusters, n_alpha=options.cluster_size, n_r=options.n_r,
        n_b=options.n_b)
    s_r, s_b = simulation.draw_samples(
        population, options.seed, outcome=options.outcome,
        pi_r_known=not options.pi_r_unknown)
    x_names = [c for c in population.units.columns if c.startswith('x_')]
    d_names = [c for c in population.units.columns if c.startswith('d_')]
    if not os.path.isdir(options.output):
        os.makedirs(options.output)
    simulation.export_csv([record._replace(y=None) for record in s_r],
                          os.path.join(options.output, 'reference.csv'),
                          x_names, d_names)
    simulation.export_csv(s_b, os.path.join(options.output, 'nonprob.csv'),
                          x_names, d_names)
    for name, mean in sorted(population.true_mean.items()):
        logging.info('pynonprob: population mean of %s = %.6f', name, mean)
    return common.EXIT_OK


_COMMAND_FUNCTIONS = {
    COMMAND_SIMULATE: _cmd_simulate,
    COMMAND_ESTIMATE: _cmd_estimate,
    COMMAND_EXPORT: _cmd_export,
}


def _log_remediation(e):
    for exception_class, hint in _REMEDIATION:
        if isinstance(e, exception_class):
            logging.critical('pynonprob: hint: %s', hint)
    if isinstance(e, sample_module.MissingFieldException) and \
            e.field == 'pi_r':
        logging.critical('pynonprob: hint: PAPW needs pi_r on every '
                         'non-probability row; use PAPP when it is unknown')


def _main(args=None):
    """Runs one command and returns its exit status.

    You can call this function from your own program; it configures the
    root logger.
    """

    try:
        command, options = _parse_args_and_config(args)
    except harness.ConfigException as e:
        logging.critical('pynonprob: %s', e)
        return common.EXIT_CONFIG_ERROR

    _configure_logging(options)

    try:
        return _COMMAND_FUNCTIONS[command](options)
    except common.NonProbException as e:
        logging.critical('pynonprob: %s', e)
        _log_remediation(e)
        return common.EXIT_CONFIG_ERROR
    except Exception as e:
        logging.critical('pynonprob: %s', e)
        logging.critical('pynonprob: %s', util.get_stack_trace())
        return common.EXIT_CONFIG_ERROR


def main():
    sys.exit(_main(sys.argv[1:]))


if __name__ == '__main__':
    main()


# vi:sts=4 sw=4 et
