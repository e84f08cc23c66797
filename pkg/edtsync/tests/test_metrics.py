#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
"""
import io
import csv
import logging

from edtsync.metrics import *
from edtsync.runtime import run
from edtsync.graph import gen_diamond
from edtsync.tests import *
from edtsync.exc import *


class TestOverheadCounters(BaseTestCase):

    def test_gauge(self):
        g = Gauge()
        g.add(2)
        g.add(3)
        g.add(-4)
        self.assertEqual((g.value, g.peak), (1, 5))

    def test_objects(self):
        c = OverheadCounters()
        c.object_created(3)
        c.object_destroyed()
        c.inflight_tasks.add(2)
        c.close(5)
        self.assertEqual((c.created, c.destroyed, c.live_at_end, c.disposed), (3, 1, 2, 5))
        self.assertEqual(c.metric('peak_objects'), 3)
        self.assertEqual(c.estimated_bytes(), 3 * OBJECT_BYTES + 2 * TASK_BYTES)
        self.assertEqual(set(METRICS) - set(c.as_dict()), set())


class TestFit(BaseTestCase):

    def test_quadratic(self):
        exponent, r2 = fit_growth_exponent([(2, 4), (4, 16), (8, 64)])
        self.assertAlmostEqual(exponent, 2.0)
        self.assertAlmostEqual(r2, 1.0)

    def test_constant(self):
        self.assertEqual(fit_growth_exponent([(1, 5), (2, 5), (4, 5)]), (0.0, 1.0))

    def test_scale_invariant(self):
        points = [(16, 3), (32, 7), (64, 12), (128, 30)]
        a = fit_growth_exponent(points)
        b = fit_growth_exponent([(n, v * 1000) for n, v in points])
        self.assertAlmostEqual(a[0], b[0])
        self.assertAlmostEqual(a[1], b[1])

    def test_errors(self):
        self.assertRaises(EdtFitError, fit_growth_exponent, [(2, 4)])
        self.assertRaises(EdtFitError, fit_growth_exponent, [(4, 4), (2, 4)])
        self.assertRaises(EdtFitError, fit_growth_exponent, [(2, 4), (2, 5)])
        self.assertRaises(EdtFitError, fit_growth_exponent, [(2, 4), (4, -1)])
        self.assertRaises(EdtFitError, fit_growth_exponent, [(0, 4), (4, 1)])

    def test_zero_values_warn(self):
        handler = self.capture_logs('edtsync.metrics', logging.WARNING)
        exponent, _ = fit_growth_exponent([(2, 0), (4, 0), (8, 0)])
        self.assertEqual(exponent, 0.0)
        self.assertEqual(len(handler.warning), 1)


class TestCsv(BaseTestCase):

    def test_row_and_header(self):
        report = run(gen_diamond(), 'counted', workers=1)
        stream = io.StringIO()
        write_csv([csv_row(report, 'diamond')], stream)
        lines = stream.getvalue().splitlines()
        self.assertEqual(lines[0], ','.join(CSV_FIELDS))
        row = next(csv.DictReader(io.StringIO(stream.getvalue())))
        self.assertEqual((row['model'], row['graph'], row['n']), ('counted', 'diamond', '4'))
        self.assertEqual(row['startup_ops'], '9')


class TestSweep(BaseTestCase):

    def test_counted_chain_is_linear(self):
        rows = []
        results = dict((r.metric, r) for r in sweep('counted', 'chain', [16, 32, 64, 128],
                                                    workers=2, rows=rows))
        self.assertEqual(len(rows), 4)
        self.assertAlmostEqual(results['startup_ops'].fitted_exponent, 1.0)
        self.assertAlmostEqual(results['peak_inflight_tasks'].fitted_exponent, 1.0)
        self.assertEqual([v for _, v in results['startup_ops'].points], [32, 64, 128, 256])
        self.assertTrue(results['gc_lag_peak'].flagged)
        self.assertEqual(results['gc_lag_peak'].fitted_exponent, 0.0)

    def test_autodec_src_chain_is_flat(self):
        results = sweep('autodec-src', 'chain', [16, 32, 64, 128], workers=2,
                        metrics=['peak_objects', 'peak_inflight_tasks'])
        for result in results:
            self.assertTrue(all(v <= 2 for _, v in result.points))
            self.assertLess(result.fitted_exponent, 0.5)

    def test_sizes_checked(self):
        self.assertRaises(EdtFitError, sweep, 'counted', 'chain', [8, 16, 32])
        self.assertRaises(EdtFitError, sweep, 'counted', 'chain', [8, 32, 16, 64])

    def test_dense_growth_classes(self):
        sizes = [32, 64, 128, 256]
        cases = [('prescribed', 'startup_ops', 1.8, 2.1),
                 ('tags1', 'peak_objects', 1.8, 2.1),
                 ('tags2', 'peak_objects', 0.9, 1.1)]
        for model, metric, low, high in cases:
            result = sweep(model, 'dense-redundant', sizes, workers=2, metrics=[metric])[0]
            self.assertTrue(low <= result.fitted_exponent <= high, result)
            self.assertGreaterEqual(result.r_squared, 0.95, result)

    @acceptance
    def test_growth_classes(self):
        sizes = [256, 512, 1024, 2048, 4096]
        growing = [('prescribed', 'dense-redundant', 'startup_ops', 1.8, 2.1),
                   ('tags1', 'dense-redundant', 'peak_objects', 1.8, 2.1),
                   ('tags2', 'dense-redundant', 'peak_objects', 0.9, 1.1),
                   ('tags2', 'chain', 'gc_lag_peak', 0.9, 1.1),
                   ('counted', 'chain', 'startup_ops', 0.9, 1.1)]
        for model, family, metric, low, high in growing:
            result = sweep(model, family, sizes, metrics=[metric])[0]
            self.assertTrue(low <= result.fitted_exponent <= high, result)
            self.assertGreaterEqual(result.r_squared, 0.95, result)
        for model in ('autodec-src', 'autodec-nosrc'):
            result = sweep(model, 'chain', sizes, metrics=['startup_ops'])[0]
            self.assertTrue(-0.1 <= result.fitted_exponent <= 0.3, result)
        result = sweep('tags1', 'chain', sizes, metrics=['gc_lag_peak'])[0]
        self.assertTrue(all(v <= 1 for _, v in result.points), result)
        result = sweep('autodec-src', 'chain', sizes, metrics=['peak_inflight_tasks'])[0]
        self.assertTrue(all(v <= 3 for _, v in result.points), result)
        result = sweep('autodec-src', 'wavefront', [4, 8, 16, 32], metrics=['peak_inflight_tasks'])[0]
        for N, v in result.points:
            self.assertLessEqual(v, 4 * N, result)
