#!/usr/bin/env python
import unittest
from fractions import Fraction
from itertools import accumulate

from pygrowth import (CountKind, InputError, OracleMismatch, ParameterError,
                      RationalSeries, ResourceError, SeriesKind,
                      accepting_states, brute_force_counts, build_automaton, coset_growth_series,
                      embedding_series, geodesic_series, load_subgraph,
                      sphere_or_ball_series, transition_matrices)
from pygrowth.growth import (coset_weights, embedding_shift, parent_count,
                             type_classes, type_series, validate_combing)

from tests.fixtures import automaton, ball, config, word


def series(num, den=(1,)):
    return RationalSeries.from_coefficients(num, den)


def with_cosets(name, K, radius):
    aut = automaton(name, K, radius)
    for H in config(name).subgroups:
        aut = accepting_states(aut, ball(name, radius), f"coset({H})",
                               config(name).subgroups)
    return aut


class Test_Combing(unittest.TestCase):
    def test_parent_count(self):
        aut = automaton("z2", 4, 10)
        self.assertEqual(parent_count(aut, aut.run(word("z2", "xy"))), 2)
        self.assertEqual(parent_count(aut, aut.run(word("z2", "xx"))), 1)
        self.assertEqual(parent_count(aut, aut.initial), 0)
        with self.assertRaises(InputError):
            parent_count(aut, aut.fail)

    def test_weights_sum_to_one(self):
        for name, K, radius in (("z2", 4, 10), ("f2", 1, 8),
                                ("dihedral", 1, 8), ("s3", 4, 10)):
            with self.subTest(name=name):
                b = ball(name, radius)
                check = validate_combing(automaton(name, K, radius), b, 8)
                self.assertTrue(check)
                self.assertIsNone(check.worst)
                self.assertEqual(check.vertices, b.count_within(8))

    def test_combing_radius(self):
        with self.assertRaises(ResourceError):
            validate_combing(automaton("f2", 1), ball("f2", 4), 5)

    def test_matrices(self):
        aut = automaton("f2", 1)
        matrices = transition_matrices(aut)
        self.assertEqual(len(matrices), 5)
        self.assertEqual(matrices.start, (1, 0, 0, 0, 0))
        self.assertEqual(matrices.counts[0], (0, 1, 1, 1, 1))
        self.assertEqual([sum(row) for row in matrices.counts],
                         [4, 3, 3, 3, 3])
        self.assertEqual(matrices.parents, (0, 1, 1, 1, 1))


class Test_SphereSeries(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.ball = ball("z2", 12)
        cls.aut = automaton("z2", 4, 10)
        cls.matrices = transition_matrices(cls.aut)

    def test_grid_sphere(self):
        oracle = brute_force_counts(self.ball, CountKind.SPHERE, 12)
        self.assertEqual(oracle, [1] + [4 * n for n in range(1, 13)])
        s = sphere_or_ball_series(self.aut, self.matrices, oracle=oracle)
        self.assertEqual(s, series([1, 2, 1], [1, -2, 1]))
        self.assertEqual(s.verified_prefix, tuple(oracle))

    def test_grid_ball(self):
        oracle = brute_force_counts(self.ball, CountKind.BALL, 12)
        s = sphere_or_ball_series(self.aut, self.matrices,
                                  kind=SeriesKind.BALL, oracle=oracle)
        self.assertEqual(s, series([1, 2, 1], [1, -3, 3, -1]))
        self.assertEqual(s.coefficients(4), [1, 5, 13, 25])

    def test_grid_geodesics(self):
        oracle = brute_force_counts(self.ball, CountKind.GEODESIC, 12)
        self.assertEqual(oracle[:4], [1, 4, 12, 28])
        pair = geodesic_series(self.aut, self.matrices, oracle)
        self.assertEqual(pair.exact.num, (1, 1, 2))
        self.assertEqual(pair.exact.den, (1, -3, 2))
        self.assertEqual(pair.cumulative.coefficients(3), [1, 5, 17])
        self.assertEqual(pair.cumulative.verified_prefix,
                         tuple(accumulate(oracle)))

    def test_geodesic_mismatch(self):
        oracle = brute_force_counts(self.ball, CountKind.GEODESIC, 6)
        oracle[-1] += 1
        with self.assertRaises(OracleMismatch):
            geodesic_series(self.aut, self.matrices, oracle)

    def test_type_series(self):
        classes = type_classes(self.aut, self.matrices)
        self.assertEqual(sum(len(c) for c in classes.values()),
                         len(self.matrices))
        total = [0] * 6
        for states in classes.values():
            coefficients = type_series(self.aut, self.matrices, states[0]
                                       ).coefficients(6)
            for n, c in enumerate(coefficients):
                self.assertEqual(c.denominator, 1)
                total[n] += c
            for s in states[1:]:
                self.assertEqual(type_series(self.aut, self.matrices, s)
                                 .coefficients(6), coefficients)
        self.assertEqual(total, [1, 4, 8, 12, 16, 20])
        with self.assertRaises(InputError):
            type_series(self.aut, self.matrices, self.aut.fail)

    def test_free_group(self):
        aut = automaton("f2", 1, 6)
        oracle = brute_force_counts(ball("f2", 6), CountKind.SPHERE, 6)
        s = sphere_or_ball_series(aut, transition_matrices(aut),
                                  oracle=oracle)
        self.assertEqual(s.format(), "num=[1,1] den=[1,-3] "
                                     "prefix=[1,4,12,36,108,324,972]")
        self.assertEqual(s.coefficients(13),
                         [1] + [4 * 3 ** (n - 1) for n in range(1, 13)])

    def test_free_group_geodesics(self):
        aut = automaton("f2", 1, 8)
        matrices = transition_matrices(aut)
        oracle = brute_force_counts(ball("f2", 8), CountKind.GEODESIC, 8)
        self.assertEqual(geodesic_series(aut, matrices, oracle).exact,
                         sphere_or_ball_series(aut, matrices))

    def test_small_K_is_caught(self):
        with self.assertRaises(ParameterError):
            build_automaton(ball("z2", 4), 1)


class Test_CosetSeries(unittest.TestCase):
    def test_free_group(self):
        aut = with_cosets("f2", 1, 6)
        H = config("f2").subgroup("Ha")
        oracle = brute_force_counts(ball("f2", 6), CountKind.COSET, 6, H)
        self.assertEqual(oracle[:4], [1, 2, 6, 18])
        pair = coset_growth_series(aut, H, transition_matrices(aut), oracle)
        self.assertEqual(pair.exact, series([1, -1], [1, -3]))
        self.assertEqual(pair.cumulative, series([1], [1, -3]))
        self.assertEqual(pair.cumulative.verified_prefix,
                         tuple(3 ** n for n in range(7)))
        self.assertEqual(pair.cumulative.coefficients(13),
                         [3 ** n for n in range(13)])

    def test_coxeter(self):
        aut = with_cosets("s3", 4, 10)
        H = config("s3").subgroup("Ws")
        oracle = brute_force_counts(ball("s3", 10), CountKind.COSET, 6, H)
        self.assertEqual(oracle, [1, 1, 1, 0, 0, 0, 0])
        pair = coset_growth_series(aut, H, transition_matrices(aut), oracle)
        self.assertTrue(pair.exact.is_polynomial)
        self.assertEqual(pair.exact.num, (1, 1, 1))

    def test_weights(self):
        aut = with_cosets("s3", 4, 10)
        weight = coset_weights(aut, config("s3").subgroup("Ws"))
        self.assertEqual(weight(aut.initial), 1)
        self.assertEqual(weight(aut.run(("s",))), 0)
        self.assertEqual(weight(aut.run(("t",))), Fraction(1))

    def test_grid_axis(self):
        aut = with_cosets("z2", 4, 10)
        H = config("z2").subgroup("X")
        oracle = brute_force_counts(ball("z2", 10), CountKind.COSET, 6, H)
        pair = coset_growth_series(aut, H, transition_matrices(aut), oracle)
        self.assertEqual(pair.exact, series([1, 1], [1, -1]))

    def test_trivial_subgroup_is_sphere(self):
        aut = with_cosets("z2", 4, 10)
        matrices = transition_matrices(aut)
        pair = coset_growth_series(aut, config("z2").subgroup("trivial"),
                                   matrices)
        self.assertEqual(pair.exact,
                         sphere_or_ball_series(aut, matrices))
        self.assertFalse(pair.exact.checked)


class Test_EmbeddingSeries(unittest.TestCase):
    def test_grid_edge(self):
        b = ball("z2", 10)
        aut = automaton("z2", 4, 10)
        Z = load_subgraph(b, [(), ("x",)], "edge")
        self.assertEqual(embedding_shift(aut, b, Z, aut.initial), 1)
        self.assertEqual(embedding_shift(aut, b, Z, aut.run(("X",))), 0)
        oracle = brute_force_counts(b, CountKind.EMBED, 8, subgraph=Z)
        self.assertEqual(oracle[:3], [0, 2, 8])
        s = embedding_series(aut, b, Z, transition_matrices(aut), oracle)
        self.assertEqual(s.coefficients(3), [0, 2, 8])

    def test_dihedral_edge(self):
        b = ball("dihedral", 8)
        aut = automaton("dihedral", 1, 8)
        Z = load_subgraph(b, [(), ("a",)], "Z")
        oracle = brute_force_counts(b, CountKind.EMBED, 8, subgraph=Z)
        self.assertEqual(oracle[:3], [0, 1, 2])
        s = embedding_series(aut, b, Z, transition_matrices(aut), oracle)
        self.assertEqual(s.coefficients(5), [0, 1, 2, 3, 4])


class Test_BruteForce(unittest.TestCase):
    def test_radius(self):
        with self.assertRaises(ResourceError):
            brute_force_counts(ball("z2", 3), CountKind.SPHERE, 4)

    def test_missing_arguments(self):
        with self.assertRaises(InputError):
            brute_force_counts(ball("z2", 3), CountKind.COSET, 3)
        with self.assertRaises(InputError):
            brute_force_counts(ball("z2", 3), CountKind.EMBED, 3)

    def test_sphere(self):
        self.assertEqual(brute_force_counts(ball("z2", 3), CountKind.SPHERE,
                                            3), [1, 4, 8, 12])


if __name__ == "__main__":
    unittest.main()
