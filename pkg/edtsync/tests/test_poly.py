#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
"""
import random
import itertools
import statistics
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from edtsync.poly import *
from edtsync.tests import *
from edtsync.exc import *


def ints(rows):
    return [[int(v) for v in row] for row in rows]


def chain_relation(upper=6, tail=None):
    """i_t = i_s + 1 with 0 <= i_s <= upper."""
    rows = [[-1, 1, -1], [1, -1, 1], [1, 0, 0], [-1, 0, upper]]
    if tail is not None:
        rows.append([0, -1, tail])
    return DependenceRelation('S', 'S', RationalPolyhedron(2, 0, rows), 1, 1)


def has_preimage(P, k, values):
    """Whether some rational ``x_k`` completes ``values`` to a point of ``P``."""
    lo, hi = None, None
    for row in P.rows:
        c = row[-1] + sum(row[i] * v for i, v in values.items())
        a = row[k]
        if a == 0:
            if c < 0:
                return False
        elif a > 0:
            lo = -c / a if lo is None else max(lo, -c / a)
        else:
            hi = c / -a if hi is None else min(hi, c / -a)
    return lo is None or hi is None or lo <= hi


class TestTilingSpec(BaseTestCase):

    def test_rejects_non_positive(self):
        self.assertRaises(EdtContractError, TilingSpec, [4, 0])

    def test_floor_toward_negative_infinity(self):
        G = TilingSpec([4])
        self.assertEqual(G.tile_of((-1,)), (-1,))
        self.assertEqual(G.tile_of((-4,)), (-1,))
        self.assertEqual(G.tile_of((3,)), (0,))

    def test_combine(self):
        self.assertEqual(TilingSpec([2]).combine(TilingSpec([3, 5])), TilingSpec([2, 3, 5]))

    def test_offsets(self):
        self.assertEqual(len(list(TilingSpec([2, 3]).offsets())), 6)


class TestRationalPolyhedron(BaseTestCase):

    def test_normalization_drops_trivial_rows_and_sorts(self):
        P = RationalPolyhedron(1, 0, [[-1, 7], [1, 0], [0, 5], [1, 0]])
        self.assertEqual(ints(P.rows), [[-1, 7], [1, 0]])
        self.assertFalse(P.empty)

    def test_trivially_false_row_marks_empty(self):
        P = RationalPolyhedron(2, 0, [[1, 0, 0], [0, 0, -3]])
        self.assertTrue(P.empty)
        self.assertEqual(ints(P.rows), [[0, 0, -1]])
        self.assertEqual(P, RationalPolyhedron.empty_set(2))

    def test_entries_are_exact_rationals(self):
        P = RationalPolyhedron(1, 0, [['3/4', '1/2']])
        self.assertEqual(P.rows[0], (Fraction(3, 4), Fraction(1, 2)))

    def test_row_width_checked(self):
        self.assertRaises(EdtContractError, RationalPolyhedron, 2, 1, [[1, 2, 3]])

    def test_normalization_idempotent(self):
        P = RationalPolyhedron(2, 1, [[1, '-2/3', 1, 0], [0, 1, 0, '5/7'], [1, '-2/3', 1, 0]])
        self.assertEqual(RationalPolyhedron(2, 1, P.rows), P)

    def test_substitute_params(self):
        P = RationalPolyhedron(1, 1, [[-1, 1, -1], [1, 0, 0]])
        Q = P.substitute_params((8,))
        self.assertEqual(Q.n_params, 0)
        self.assertEqual(ints(Q.rows), [[-1, 7], [1, 0]])
        self.assertRaises(EdtContractError, P.substitute_params, ())

    def test_contains_rational_point(self):
        P = u_box(TilingSpec([4]))
        self.assertTrue(P.contains((Fraction(-3, 4),)))
        self.assertFalse(P.contains((Fraction(-4, 5),)))

    def test_text_round_trip(self):
        P = RationalPolyhedron(2, 1, [[1, '-1/2', 3, '7/3'], [0, 1, 0, 0]])
        self.assertEqual(RationalPolyhedron.from_text(P.to_text()), P)
        self.assertTrue(P.to_text().startswith('dims 2 params 1\n'))

    def test_text_empty_round_trip(self):
        P = RationalPolyhedron.empty_set(1)
        self.assertTrue(RationalPolyhedron.from_text(P.to_text()).empty)

    def test_parse_sample_file(self):
        with open(self.sample('chain_relation.poly')) as f:
            P = RationalPolyhedron.from_text(f.read())
        self.assertEqual((P.dim, P.n_params, len(P)), (2, 0, 4))

    def test_parse_error_line_numbers(self):
        with open(self.sample('bad.poly')) as f:
            text = f.read()
        with self.assertRaises(EdtParseError) as cm:
            RationalPolyhedron.from_text(text)
        self.assertEqual(cm.exception.lineno, 3)
        self.assertIn('line 3', str(cm.exception))

    def test_parse_errors(self):
        self.assertRaises(EdtParseError, RationalPolyhedron.from_text, '')
        self.assertRaises(EdtParseError, RationalPolyhedron.from_text, 'dims x params 0\n')
        with self.assertRaises(EdtParseError) as cm:
            RationalPolyhedron.from_text('dims 1 params 0\n1 0\n1 2 3\n')
        self.assertEqual(cm.exception.lineno, 3)


class TestCompression(BaseTestCase):

    def test_image_inverse_tiling(self):
        D = RationalPolyhedron(1, 0, [[1, 0], [-1, 7]])
        P = image_inverse_tiling(D, TilingSpec([4]))
        self.assertEqual(P, RationalPolyhedron(1, 0, [[4, 0], [-4, 7]]))

    def test_image_inverse_tiling_scales_columns(self):
        D = RationalPolyhedron(2, 0, [[1, -1, 0]])
        self.assertEqual(image_inverse_tiling(D, TilingSpec([2, 3])),
                         RationalPolyhedron(2, 0, [[2, -3, 0]]))

    def test_image_inverse_tiling_keeps_params(self):
        D = RationalPolyhedron(1, 1, [[-1, 1, -1]])
        self.assertEqual(image_inverse_tiling(D, TilingSpec([4])),
                         RationalPolyhedron(1, 1, [[-4, 1, -1]]))

    def test_image_inverse_tiling_mismatch(self):
        self.assertRaises(EdtContractError, image_inverse_tiling,
                          RationalPolyhedron(2, 0, [[1, 0, 0]]), TilingSpec([4]))

    def test_u_box(self):
        self.assertEqual(u_box(TilingSpec([4])),
                         RationalPolyhedron(1, 0, [[1, '3/4'], [-1, 0]]))
        self.assertEqual(len(u_box(TilingSpec([2, 5]))), 4)
        self.assertEqual(integer_points(u_box(TilingSpec([2, 5])), (), [(-1, 1), (-1, 1)]), [(0, 0)])

    def test_u_box_degenerate_tile(self):
        U = u_box(TilingSpec([1]))
        self.assertEqual(ints(U.rows), [[-1, 0], [1, 0]])

    def test_inflate(self):
        G = TilingSpec([4])
        self.assertEqual(inflate(RationalPolyhedron(1, 0, [[2, -1]]), G),
                         RationalPolyhedron(1, 0, [[2, '1/2']]))
        negative = RationalPolyhedron(1, 0, [[-1, 5]])
        self.assertEqual(inflate(negative, G), negative)
        self.assertEqual(inflate(RationalPolyhedron(2, 0, [[1, -1, 0]]), TilingSpec([3, 3])),
                         RationalPolyhedron(2, 0, [[1, -1, '2/3']]))

    def test_inflate_ignores_param_columns(self):
        P = RationalPolyhedron(1, 1, [[1, 5, 0]])
        self.assertEqual(inflate(P, TilingSpec([2])).rows[0][-1], Fraction(1, 2))

    def test_identity_tiling_fixpoint(self):
        D = RationalPolyhedron(2, 1, [[1, -2, 1, 0], [-1, 0, 0, 9], ['1/2', 3, 0, -1]])
        I = TilingSpec.identity(2)
        self.assertEqual(image_inverse_tiling(D, I), D)
        self.assertEqual(inflate(D, I), D)
        self.assertEqual(integer_points(u_box(I), (), [(-2, 2), (-2, 2)]), [(0, 0)])

    def test_tile_dependence_chain(self):
        deltaT = tile_dependence(chain_relation(), TilingSpec([4]), TilingSpec([4]))
        self.assertEqual(integer_points(deltaT, (), [(0, 1), (0, 1)]), [(0, 0), (0, 1), (1, 1)])

    def test_tile_dependence_identity_relation(self):
        rows = [[-1, 1, 0], [1, -1, 0], [1, 0, 0], [-1, 0, 3]]
        rel = DependenceRelation('S', 'S', RationalPolyhedron(2, 0, rows), 1, 1)
        deltaT = tile_dependence(rel, TilingSpec([2]), TilingSpec([2]))
        self.assertEqual(integer_points(deltaT), [(0, 0), (1, 1)])

    def test_tile_dependence_empty(self):
        rel = DependenceRelation('S', 'S', RationalPolyhedron.empty_set(2), 1, 1)
        deltaT = tile_dependence(rel, TilingSpec([4]), TilingSpec([4]))
        self.assertTrue(deltaT.empty)
        self.assertEqual(integer_points(deltaT, (), [(0, 3), (0, 3)]), [])

    def test_tile_dependence_identity_tiling(self):
        rel = chain_relation()
        self.assertEqual(tile_dependence(rel, TilingSpec([1]), TilingSpec([1])), rel.delta)

    def test_tile_dependence_split_mismatch(self):
        self.assertRaises(EdtContractError, tile_dependence, chain_relation(),
                          TilingSpec([4, 4]), TilingSpec([4]))
        self.assertRaises(EdtContractError, DependenceRelation, 'S', 'S',
                          RationalPolyhedron(2, 0), 2, 1)


class TestProjection(BaseTestCase):

    def test_one_step(self):
        P = RationalPolyhedron(2, 0, [[1, -1, 0], [0, 1, -2]])
        self.assertEqual(fm_project(P, [1]), RationalPolyhedron(1, 0, [[1, -2]]))

    def test_non_unit_coefficients(self):
        P = RationalPolyhedron(2, 0, [[2, 0, -4], [0, 1, 0], [0, -1, 3]])
        Q = fm_project(P, [1])
        self.assertEqual(Q, RationalPolyhedron(1, 0, [[1, -2]]))
        self.assertFalse(Q.contains((1,)))
        self.assertTrue(Q.contains((2,)))

    def test_non_unit_upper_bound(self):
        P = RationalPolyhedron(2, 0, [[-2, 0, 10], [1, -1, 0], [0, 1, 0]])
        Q = fm_project(P, [1])
        self.assertTrue(Q.contains((5,)))
        self.assertFalse(Q.contains((6,)))

    def test_box(self):
        P = RationalPolyhedron.box([(0, 3), (0, 3)])
        self.assertEqual(fm_project(P, [1]), RationalPolyhedron.box([(0, 3)]))

    def test_dominated_rows_pruned(self):
        P = RationalPolyhedron(2, 0, [[1, 1, 0], [-1, 0, 5], [0, -1, 5], [2, 2, 1]])
        Q = fm_project(P, [1])
        self.assertEqual(len([r for r in Q.rows if r[0] > 0]), 1)

    def test_infeasible(self):
        P = RationalPolyhedron(2, 0, [[0, 1, -3], [0, -1, 1], [1, 0, 0]])
        self.assertTrue(fm_project(P, [1]).empty)

    def test_invalid_dimension(self):
        self.assertRaises(EdtContractError, fm_project, RationalPolyhedron(1, 0), [1])

    def test_projection_path_within_compression(self):
        rel = chain_relation(tail=7)
        G = TilingSpec([4])
        projected = projection_tile_dependence(rel, G, G)
        compressed = tile_dependence(rel, G, G)
        box = [(-1, 2), (-1, 2)]
        self.assertEqual(integer_points(projected, (), box), [(0, 0), (0, 1), (1, 1)])
        self.assertTrue(set(integer_points(projected, (), box)) <= set(integer_points(compressed, (), box)))

    @given(st.integers(0, 2 ** 32), st.integers(2, 4))
    @settings(max_examples=30, deadline=None)
    def test_projected_integer_points_satisfy_result(self, seed, dim):
        rng = random.Random(seed)
        rows = [[rng.randint(-2, 2) for _ in range(dim)] + [rng.randint(0, 6)] for _ in range(4)]
        P = RationalPolyhedron.box([(-3, 3)] * dim).intersect(RationalPolyhedron(dim, 0, rows))
        eliminate = sorted(rng.sample(range(dim), rng.randint(1, dim - 1)))
        keep = [i for i in range(dim) if i not in eliminate]
        Q = fm_project(P, eliminate)
        for point in integer_points(P, (), [(-3, 3)] * dim):
            self.assertTrue(Q.contains(tuple(point[i] for i in keep)))

    @given(st.integers(0, 2 ** 32), st.integers(2, 4))
    @settings(max_examples=30, deadline=None)
    def test_projected_integer_points_have_rational_preimage(self, seed, dim):
        rng = random.Random(seed)
        rows = [[rng.choice([-3, -2, 2, 3]) * rng.randint(0, 1) for _ in range(dim)] + [rng.randint(0, 8)]
                for _ in range(4)]
        P = RationalPolyhedron.box([(-3, 3)] * dim).intersect(RationalPolyhedron(dim, 0, rows))
        k = rng.randrange(dim)
        keep = [i for i in range(dim) if i != k]
        Q = fm_project(P, [k])
        for point in integer_points(Q, (), [(-3, 3)] * len(keep)):
            self.assertTrue(has_preimage(P, k, dict(zip(keep, point))), point)


class TestEnumeration(BaseTestCase):

    def test_integer_points(self):
        P = RationalPolyhedron(1, 0, [[4, 0], [-4, 7]])
        self.assertEqual(integer_points(P, (), [(-2, 3)]), [(0,), (1,)])

    def test_empty(self):
        self.assertEqual(integer_points(RationalPolyhedron.empty_set(2), (), [(0, 4), (0, 4)]), [])

    def test_u_box_points(self):
        self.assertEqual(integer_points(u_box(TilingSpec([4])), (), [(-1, 1)]), [(0,)])

    def test_lexicographic_order(self):
        P = RationalPolyhedron(2, 0, [[1, -1, 0]])
        points = integer_points(P, (), [(0, 2), (0, 2)])
        self.assertEqual(points, sorted(points))
        self.assertEqual(len(points), 6)

    def test_cap(self):
        P = RationalPolyhedron(2, 0)
        self.assertRaises(EdtEnumerationCapError, integer_points, P, (), [(0, 99), (0, 99)], 9999)
        self.assertEqual(len(integer_points(P, (), [(0, 99), (0, 99)], 10000)), 10000)

    def test_derived_bounds_non_unit_coefficients(self):
        P = RationalPolyhedron(1, 0, [[2, 0], [-2, 10]])
        self.assertEqual(bounding_box(P), [(0, 5)])
        self.assertEqual(integer_points(P), [(i,) for i in range(6)])

    def test_derived_bounds(self):
        P = RationalPolyhedron(2, 1, [[1, 0, 0, 0], [0, 1, 0, 0], [-1, -1, 1, 0]])
        self.assertEqual(len(integer_points(P, (3,))), 10)

    def test_unbounded(self):
        self.assertRaises(EdtUnboundedError, integer_points, RationalPolyhedron(1, 0, [[1, 0]]))

    def test_bounding_box(self):
        P = RationalPolyhedron(2, 0, [[1, 0, 0], [0, 1, 0], [-2, -1, 9]])
        self.assertEqual(bounding_box(P), [(0, 4), (0, 9)])
        self.assertEqual(bounding_box(P, clip=[(1, 2), (0, 3)]), [(1, 2), (0, 3)])
        self.assertIsNone(bounding_box(RationalPolyhedron.empty_set(1)))

    def test_tile_domain_points(self):
        G = TilingSpec([4])
        self.assertEqual(tile_domain_points(RationalPolyhedron.box([(0, 7)]), G), [(0,), (1,)])
        self.assertEqual(tile_domain_points(RationalPolyhedron.box([(0, 7), (0, 7)]), TilingSpec([4, 4])),
                         [(0, 0), (0, 1), (1, 0), (1, 1)])
        self.assertEqual(tile_domain_points(RationalPolyhedron.box([(3, 3)]), G), [(0,)])

    def test_tile_domain_negative_iterations(self):
        self.assertEqual(tile_domain_points(RationalPolyhedron.box([(-5, -1)]), TilingSpec([4])),
                         [(-2,), (-1,)])


class TestPredecessors(BaseTestCase):

    def setUp(self):
        G = TilingSpec([4])
        self.deltaT = tile_dependence(chain_relation(), G, G)

    def test_predecessors_of(self):
        P = predecessors_of(self.deltaT, (1,), ())
        self.assertEqual(P.dim, 1)
        self.assertEqual(integer_points(P), [(0,), (1,)])

    def test_predecessors_outside_domain(self):
        P = predecessors_of(self.deltaT, (5,), ())
        self.assertEqual(integer_points(P, (), [(-10, 10)]), [])

    def test_predecessors_keeps_params_when_not_given(self):
        deltaT = RationalPolyhedron(2, 1, [[1, -1, 1, 0]])
        self.assertEqual(predecessors_of(deltaT, (2,)).n_params, 1)
        self.assertRaises(EdtContractError, predecessors_of, deltaT, (1, 2, 3))

    def test_multi_tile_chain(self):
        G = TilingSpec([4])
        deltaT = tile_dependence(chain_relation(upper=14), G, G)
        tiles = [(0,), (1,), (2,), (3,)]
        for t in range(1, 4):
            self.assertEqual(predecessor_points(deltaT, (t,), (), tiles, exclude=(t,))[0], [(t - 1,)])
            self.assertEqual(count_predecessors(deltaT, (t,), (), tiles, exclude=(t,)), 1)
        self.assertEqual(count_predecessors(deltaT, (0,), (), tiles, exclude=(0,)), 0)
        self.assertEqual(source_tasks(tiles, [deltaT]), [(0,)])

    def test_count_predecessors(self):
        domain = [(0,), (1,)]
        self.assertEqual(count_predecessors(self.deltaT, (1,), (), domain), 2)
        self.assertEqual(count_predecessors(self.deltaT, (1,), (), domain, exclude=(1,)), 1)
        self.assertEqual(count_predecessors(self.deltaT, (0,), (), []), 0)

    def test_wavefront_counts(self):
        from edtsync.graph import wavefront_program
        program = wavefront_program(4)
        domain = program.domains['S']
        deltas = [d for d, _, _ in program.deps]
        params = program.param_values
        count = lambda t: sum(count_predecessors(d, t, params, domain, exclude=t) for d in deltas)
        self.assertEqual(count((2, 2)), 2)
        self.assertEqual(count((0, 0)), 0)
        self.assertEqual(count((0, 3)), 1)
        self.assertEqual(source_tasks(domain, deltas, params), [(0, 0)])

    def test_source_tasks_without_dependences(self):
        tiles = [(0,), (1,), (2,)]
        self.assertEqual(source_tasks(tiles, []), tiles)

    def test_minkowski_member(self):
        G = TilingSpec([4])
        P = image_inverse_tiling(RationalPolyhedron.box([(0, 7)]), G)
        self.assertTrue(minkowski_member(P, G, (1,)))
        self.assertFalse(minkowski_member(P, G, (2,)))
        self.assertFalse(minkowski_member(P, G, (-1,)))


def random_domain(rng, dim, extent):
    lo = [rng.randint(-4, 4) for _ in range(dim)]
    box = [(l, l + rng.randint(0, extent - 1)) for l in lo]
    rows = []
    for _ in range(rng.randint(0, 3)):
        a = [rng.randint(-3, 3) for _ in range(dim)]
        center = [Fraction(l + h, 2) for l, h in box]
        b = -sum(x * c for x, c in zip(a, center)) + rng.randint(0, 4)
        rows.append(a + [b])
    D = RationalPolyhedron.box(box).intersect(RationalPolyhedron(dim, 0, rows))
    return D, box


def check_compression_exactness(test, seed, max_dim, extent):
    rng = random.Random(seed)
    dim = rng.randint(1, max_dim)
    D, box = random_domain(rng, dim, extent)
    G = TilingSpec([rng.randint(1, 8) for _ in range(dim)])
    oracle = set(tile_domain_points(D, G, (), box))
    P = image_inverse_tiling(D, G)
    inflated = inflate(P, G)
    test.assertEqual(len(inflated), len(P))
    for T in oracle:
        test.assertTrue(inflated.contains(T), (D, G, T))
    candidates = itertools.product(*[range(lo // g, hi // g + 1) for (lo, hi), g in zip(box, G.diag)])
    members = set(T for T in candidates if minkowski_member(P, G, T))
    test.assertEqual(members, oracle)


def check_dependence_soundness(test, seed):
    rng = random.Random(seed)
    k = rng.randint(1, 2)
    source = [(0, rng.randint(1, 11)) for _ in range(k)]
    target = [(0, rng.randint(1, 11)) for _ in range(k)]
    distance = [rng.randint(-2, 2) for _ in range(k)]
    rows = []
    for j in range(k):
        for i, (lo, hi) in ((j, source[j]), (k + j, target[j])):
            low = [0] * (2 * k + 1)
            low[i], low[-1] = 1, -lo
            high = [0] * (2 * k + 1)
            high[i], high[-1] = -1, hi
            rows.extend([low, high])
        eq = [0] * (2 * k + 1)
        eq[k + j], eq[j], eq[-1] = 1, -1, -distance[j]
        rows.extend([eq, [-v for v in eq]])
    rel = DependenceRelation('S', 'T', RationalPolyhedron(2 * k, 0, rows), k, k)
    Gs = TilingSpec([rng.randint(1, 8) for _ in range(k)])
    Gt = TilingSpec([rng.randint(1, 8) for _ in range(k)])
    deltaT = tile_dependence(rel, Gs, Gt)
    test.assertEqual(len(deltaT), len(rel.delta))
    for i_s in itertools.product(*[range(lo, hi + 1) for lo, hi in source]):
        i_t = tuple(a + d for a, d in zip(i_s, distance))
        if all(lo <= v <= hi for v, (lo, hi) in zip(i_t, target)):
            test.assertTrue(deltaT.contains(Gs.tile_of(i_s) + Gt.tile_of(i_t)))


class TestExactness(BaseTestCase):

    @given(st.integers(0, 2 ** 32))
    @settings(max_examples=40, deadline=None)
    def test_compression_exactness_small(self, seed):
        check_compression_exactness(self, seed, max_dim=3, extent=8)

    @given(st.integers(0, 2 ** 32))
    @settings(max_examples=40, deadline=None)
    def test_dependence_soundness(self, seed):
        check_dependence_soundness(self, seed)

    @acceptance
    def test_compression_exactness_acceptance(self):
        for seed in range(100):
            check_compression_exactness(self, seed, max_dim=4, extent=12)
        for seed in range(100):
            check_dependence_soundness(self, seed)


class TestBench(BaseTestCase):

    def test_gen_bench_relation(self):
        rel, G = gen_bench_relation(3, random.Random(1))
        self.assertEqual((rel.source_dim, rel.target_dim, len(G)), (3, 3, 3))
        self.assertTrue(all(2 <= g <= 8 for g in G.diag))

    def test_bench_rows(self):
        rows = bench([4], instances=2, seed=3)
        self.assertEqual([r['instance'] for r in rows], [0, 1])
        self.assertTrue(all(r['rows_compression'] > 0 for r in rows))

    def test_bench_rejects_odd_dims(self):
        self.assertRaises(EdtContractError, bench, [5], 1)

    def test_compression_faster_than_projection(self):
        rows = bench([4], instances=5, seed=0)
        comp = statistics.median(r['compression_s'] for r in rows)
        proj = statistics.median(r['projection_s'] for r in rows)
        self.assertLess(comp, proj)

    @acceptance
    def test_ratio_grows_with_dimension(self):
        rows = bench([4, 6, 8, 10], instances=10, seed=0)
        ratios = []
        for dims in [4, 6, 8, 10]:
            comp = statistics.median(r['compression_s'] for r in rows if r['dims'] == dims)
            proj = statistics.median(r['projection_s'] for r in rows if r['dims'] == dims)
            self.assertLess(comp, proj)
            ratios.append(proj / comp)
        self.assertEqual(ratios, sorted(ratios))
