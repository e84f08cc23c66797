#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Command-line code for :mod:`edtsync`

Exit codes: 0 success, 1 verification or runtime failure, 2 usage, parse
or validation error.

"""

import os
import sys
import pdb
import json
import statistics
import logging

import argparse

from edtsync import __version__
from edtsync import graph, metrics, poly, runtime, verify
from edtsync.exc import *
from edtsync.config import (Config, ConfigManager, RunConfig, MODEL_CHOICES,
                            PRESCHEDULE_CHOICES)
from edtsync.utils import (EdtFormatter, EdtStreamHandler, highlight_output,
                           parse_int_list, render)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

USAGE_ERRORS = (EdtParseError, EdtValidationError, EdtConfigurationError,
                EdtContractError, EdtEnumerationCapError, EdtUnboundedError, EdtFitError)


class CLI(object):
    """
    Dispatcher based on parsed arguments. Holds
    all commands methods.

    :param config: Validated options of the invocation
    :type config: :class:`edtsync.config.RunConfig`
    :param command: Command name to execute
    :type command: string

    """

    def __init__(self, config, command, poly_command=None):
        self.config = config
        self.command = command
        self.poly_command = poly_command

    def __call__(self):
        """Run the command.

        :returns: exit code
        :rtype: int

        """
        try:
            return getattr(self, self.command)() or EXIT_OK
        except EdtVerificationError as e:
            log.error("%s: %s", e.__class__.__name__, e)
            for violation in e.violations[:20]:
                log.error("  %s", violation)
            return EXIT_FAILURE
        except USAGE_ERRORS as e:
            log.error("%s: %s", e.__class__.__name__, e)
            return EXIT_USAGE
        except EdtException as e:
            log.error("%s: %s", e.__class__.__name__, e)
            return EXIT_FAILURE
        except (IOError, OSError) as e:
            log.error("%s: %s", e.__class__.__name__, e)
            return EXIT_USAGE

    def emit(self, text, path='', lexer='text'):
        """Write ``text`` to ``path``, or to stdout highlighted with the
        configured pygments formatter."""
        if path:
            with open(path, 'w') as f:
                f.write(text)
            log.info("Wrote %s", path)
        else:
            sys.stdout.write(highlight_output(text, lexer, self.config.format))
            sys.stdout.flush()

    def graph_name(self):
        return os.path.basename(self.config.graph)

    def build_graph(self):
        c = self.config
        return graph.build_graph(c.graph, n=c.n, tiles=c.tiles, edge_prob=c.edge_prob,
                                 seed=c.seed, work_units=c.work_units, cap=c.enum_cap)

    def run_options(self):
        c = self.config
        return dict(jitter=c.jitter, grace_period=c.grace_period, preschedule=c.preschedule)

    ## commands

    def gen(self):
        """Generate a graph, write its JSON and print its statistics."""
        g = self.build_graph()
        counts = None
        if self.config.prescribers:
            counts = graph.prescriber_expand(g, self.config.prescribers)[1]
        self.emit(g.dumps() + '\n', self.config.output, 'json')
        text = render('stats.jinja', name=self.graph_name(), stats=graph.stats(g),
                      prescribers=counts)
        print(text, file=sys.stdout if self.config.output else sys.stderr)

    def poly(self):
        return getattr(self, 'poly_%s' % self.poly_command)()

    def _tiling(self, value):
        if os.path.isfile(value):
            with open(value) as f:
                value = f.read().replace('\n', ',').replace(' ', ',')
        try:
            sizes = parse_int_list(value)
        except ValueError:
            raise EdtValidationError("tiling must be integers: %r" % value)
        if not sizes:
            raise EdtValidationError("a tiling is required (--tiling)")
        return poly.TilingSpec(sizes)

    @staticmethod
    def _polyhedron(path):
        if not path:
            raise EdtValidationError("a polyhedron file is required")
        with open(path) as f:
            return poly.RationalPolyhedron.from_text(f.read())

    def poly_tiledeps(self):
        """Derive the tile dependence of a relation by compression."""
        c = self.config
        delta = self._polyhedron(c.relation)
        Gs = self._tiling(c.tiling)
        Gt = self._tiling(c.target_tiling) if c.target_tiling else Gs
        rel = poly.DependenceRelation('S', 'S', delta, len(Gs), len(Gt))
        deltaT = poly.tile_dependence(rel, Gs, Gt)
        text = deltaT.to_text()
        if c.domain:
            D = self._polyhedron(c.domain)
            tiles = poly.tile_domain_points(D, Gs, c.params, cap=c.enum_cap)
            targets = tiles if Gs == Gt else poly.tile_domain_points(D, Gt, c.params, cap=c.enum_cap)
            log.info("%d tiles in the domain", len(tiles))
            if Gs == Gt:
                sources = poly.source_tasks(tiles, [deltaT], c.params, cap=c.enum_cap)
                log.info("%d source tiles: %s", len(sources), sources[:10])
            text += self._tile_pairs(deltaT, tiles, targets)
        self.emit(text, c.output)

    def _tile_pairs(self, deltaT, sources, targets):
        """Integer tile pairs of ``deltaT`` within the domain, as comment
        lines ``# T_s -> T_t`` of the polyhedron text format."""
        c = self.config
        lines = ['# tile pairs']
        for t in targets:
            points = poly.predecessor_points(deltaT, t, c.params, sources, cap=c.enum_cap)[0]
            lines.extend('# %s -> %s' % (' '.join(map(str, s)), ' '.join(map(str, t)))
                         for s in points)
        log.info("%d tile pairs", len(lines) - 1)
        return '\n'.join(lines) + '\n'

    def poly_bench(self):
        """Time compression against projection, CSV rows per instance."""
        c = self.config
        rows = poly.bench(c.dims, c.instances, c.seed)
        fields = ['dims', 'instance', 'compression_s', 'projection_s',
                  'rows_compression', 'rows_projection']
        lines = [','.join(fields)]
        for row in rows:
            lines.append(','.join(('%.9f' % row[f]) if f.endswith('_s') else str(row[f])
                                  for f in fields))
        for dims in c.dims:
            comp = statistics.median(r['compression_s'] for r in rows if r['dims'] == dims)
            proj = statistics.median(r['projection_s'] for r in rows if r['dims'] == dims)
            log.info("dims %d: median compression %.6fs, projection %.6fs, ratio %.1f",
                     dims, comp, proj, proj / comp if comp else float('inf'))
        self.emit('\n'.join(lines) + '\n', c.csv or c.output)

    def run(self):
        """Execute a graph once and write the counters CSV."""
        c = self.config
        g = self.build_graph()
        record = c.events or bool(c.event_log)
        report = runtime.run(g, c.model, workers=c.workers, seed=c.seed,
                             record_events=record, **self.run_options())
        log.info("%s on %s (n=%d): %s", c.model, self.graph_name(), g.n,
                 report.counters.as_dict())
        if record:
            self.emit(report.dumps(events=True) + '\n', c.event_log, 'json')
        out = []
        metrics.write_csv([metrics.csv_row(report, self.graph_name())], _Lines(out))
        self.emit(''.join(out), c.csv)
        if record:
            verify.assert_correct(g, report)

    def bench(self):
        """Sweep one model over a graph family and fit growth exponents."""
        c = self.config
        rows = []
        results = metrics.sweep(c.model, c.family, c.sizes, workers=c.workers, seed=c.seed,
                                rows=rows, **self.run_options())
        if c.csv:
            out = []
            metrics.write_csv(rows, _Lines(out))
            self.emit(''.join(out), c.csv)
        print(render('sweep.jinja', model=c.model, family=c.family, sizes=c.sizes,
                     results=results))
        for result in results:
            if result.flagged:
                log.warning("%s: zero values mapped to 1 before fitting", result.metric)

    def verify(self):
        """Run the model × workers × seed matrix and check every run."""
        c = self.config
        g = self.build_graph()
        models = MODEL_CHOICES if c.all_models else [c.model]
        results = verify.verify_matrix(g, models, c.workers_list, range(c.seed, c.seed + c.seeds),
                                       **self.run_options())
        failed = [r for r in results if not r.ok]
        print(render('verify.jinja', name=self.graph_name(), n=g.n, results=results,
                     failed=failed))
        if failed:
            first = failed[0]
            log.error("Offending events of %s workers=%d seed=%d:", first.model,
                      first.workers, first.seed)
            for event in first.excerpt:
                log.error("  %s", json.dumps(event, sort_keys=True))
            raise EdtVerificationError("%d of %d runs violated invariants" % (len(failed), len(results)),
                                       [v for r in failed for v in r.violations])


class _Lines(object):
    """Minimal writable collecting CSV output."""

    def __init__(self, lines):
        self.lines = lines

    def write(self, text):
        self.lines.append(text)


_handler = None


def setup_logging(args):
    """Install the terminal log handler on the root logger."""
    global _handler
    logger = logging.getLogger()
    if _handler is not None:
        logger.removeHandler(_handler)
    _handler = EdtStreamHandler()
    _handler.setFormatter(EdtFormatter("%(message)s", colors=not args.nocolors))
    logger.addHandler(_handler)

    if args.debug:
        logger.setLevel(logging.DEBUG)
    elif args.quiet:
        logger.setLevel(logging.WARN)
    else:
        logger.setLevel(logging.INFO)


def build_parser():
    """Argument parser of the ``edtsync`` command."""
    opts = Config.allowed_options
    main_parser = argparse.ArgumentParser(prog='edtsync',
        description="Runs task graphs under task synchronization models.")
    main_parser.add_argument('-v', '--version', action='version',
                             version='%(prog)s ' + __version__)

    # global options
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--nocolors', action='store_true', dest='nocolors', default=None,
                        help=opts['nocolors'][0])
    parser.add_argument('--format', action='store', dest='format', help=opts['format'][0])
    parser.add_argument('-o', '--output', action='store', dest='output', help=opts['output'][0])
    parser.add_argument('--seed', action='store', type=int, dest='seed', help=opts['seed'][0])
    parser.add_argument('--enum-cap', action='store', type=int, dest='enum_cap',
                        help=opts['enum_cap'][0])

    logging_group = parser.add_mutually_exclusive_group()
    logging_group.add_argument("-q", "--quiet", action='store_true',
                               dest="quiet", default=False, help="Show less output.")
    logging_group.add_argument("-d", "--debug", action='store_true',
                               dest="debug", default=False, help="Show debug information.")

    # graph options
    graph_parser = argparse.ArgumentParser(add_help=False)
    graph_parser.add_argument('--n', action='store', type=int, dest='n', help=opts['n'][0])
    graph_parser.add_argument('--tiles', action='store', type=int, dest='tiles',
                              help=opts['tiles'][0])
    graph_parser.add_argument('--edge-prob', action='store', type=float, dest='edge_prob',
                              help=opts['edge_prob'][0])
    graph_parser.add_argument('--work-units', action='store', type=int, dest='work_units',
                              help=opts['work_units'][0])

    # execution options
    exec_parser = argparse.ArgumentParser(add_help=False)
    exec_parser.add_argument('-m', '--model', action='store', dest='model',
                             choices=MODEL_CHOICES, help=opts['model'][0])
    exec_parser.add_argument('-w', '--workers', action='store', type=int, dest='workers',
                             help=opts['workers'][0])
    exec_parser.add_argument('--jitter', action='store', type=float, dest='jitter',
                             help=opts['jitter'][0])
    exec_parser.add_argument('--grace-period', action='store', type=float, dest='grace_period',
                             help=opts['grace_period'][0])
    exec_parser.add_argument('--preschedule', action='store', dest='preschedule',
                             choices=PRESCHEDULE_CHOICES, help=opts['preschedule'][0])

    # subcommands
    subparsers = main_parser.add_subparsers(title="commands", dest="command")
    subparsers.required = True

    parser_gen = subparsers.add_parser('gen', help="Generate a task graph as JSON",
                                       description="Generate a task graph as JSON",
                                       parents=[parser, graph_parser])
    parser_gen.add_argument('graph', action='store', help=opts['graph'][0])
    parser_gen.add_argument('--prescribers', action='store', type=int, dest='prescribers',
                            metavar='ROUNDS', help=opts['prescribers'][0])

    parser_poly = subparsers.add_parser('poly', help="Polyhedral tile dependences",
                                        description="Polyhedral tile dependences")
    poly_commands = parser_poly.add_subparsers(title="poly commands", dest="poly_command")
    poly_commands.required = True
    parser_tiledeps = poly_commands.add_parser('tiledeps', parents=[parser],
        help="Tile dependence of a relation by compression",
        description="Tile dependence of a relation by compression")
    parser_tiledeps.add_argument('--relation', action='store', dest='relation', required=True,
                                 help=opts['relation'][0])
    parser_tiledeps.add_argument('--tiling', action='store', dest='tiling', required=True,
                                 help=opts['tiling'][0])
    parser_tiledeps.add_argument('--target-tiling', action='store', dest='target_tiling',
                                 help=opts['target_tiling'][0])
    parser_tiledeps.add_argument('--domain', action='store', dest='domain', help=opts['domain'][0])
    parser_tiledeps.add_argument('--params', action='store', dest='params', help=opts['params'][0])
    parser_pbench = poly_commands.add_parser('bench', parents=[parser],
        help="Time compression against projection",
        description="Time compression against projection")
    parser_pbench.add_argument('--dims', action='store', dest='dims', help=opts['dims'][0])
    parser_pbench.add_argument('--instances', action='store', type=int, dest='instances',
                               help=opts['instances'][0])
    parser_pbench.add_argument('--csv', action='store', dest='csv', help=opts['csv'][0])

    parser_run = subparsers.add_parser('run', help="Execute a graph once",
                                       description="Execute a graph once",
                                       parents=[parser, graph_parser, exec_parser])
    parser_run.add_argument('-g', '--graph', action='store', dest='graph', help=opts['graph'][0])
    parser_run.add_argument('--csv', action='store', dest='csv', help=opts['csv'][0])
    parser_run.add_argument('--events', action='store_true', dest='events', default=None,
                            help=opts['events'][0])
    parser_run.add_argument('--event-log', action='store', dest='event_log',
                            help=opts['event_log'][0])

    parser_bench = subparsers.add_parser('bench', help="Sweep a model over growing graphs",
                                         description="Sweep a model over growing graphs",
                                         parents=[parser, exec_parser])
    parser_bench.add_argument('--family', action='store', dest='family', help=opts['family'][0])
    parser_bench.add_argument('--sizes', action='store', dest='sizes', help=opts['sizes'][0])
    parser_bench.add_argument('--csv', action='store', dest='csv', help=opts['csv'][0])

    parser_verify = subparsers.add_parser('verify', help="Check runtime invariants",
                                          description="Check runtime invariants",
                                          parents=[parser, graph_parser, exec_parser])
    parser_verify.add_argument('-g', '--graph', action='store', dest='graph', help=opts['graph'][0])
    parser_verify.add_argument('--all-models', action='store_true', dest='all_models', default=None,
                               help=opts['all_models'][0])
    parser_verify.add_argument('--seeds', action='store', type=int, dest='seeds',
                               help=opts['seeds'][0])
    parser_verify.add_argument('--workers-list', action='store', dest='workers_list',
                               help=opts['workers_list'][0])
    return main_parser


def main(args=None, environ=None):
    """Parse command-line options and do it.
    Core function for edtsync command.

    Dispatches commands to :class:`edtsync.cli.CLI`

    :returns: exit code
    """
    args = build_parser().parse_args(sys.argv[1:] if args is None else args)
    setup_logging(args)

    try:
        config = RunConfig(ConfigManager.from_sources(args, environ))
    except (EdtValidationError, EdtConfigurationError) as e:
        log.error("%s: %s", e.__class__.__name__, e)
        return EXIT_USAGE
    log.debug("%r", config)

    # handle command
    try:
        return CLI(config, args.command, getattr(args, 'poly_command', None))()
    except Exception:
        # enter pdb debugger when debugging is enabled
        if args.debug:
            pdb.post_mortem()
        raise


if __name__ == "__main__":
    sys.exit(main())
