#!/usr/bin/env python
import unittest

from pygrowth import (InputError, ProjectionMode, ResourceError,
                      check_fftp, check_projections)
from pygrowth.fellow import ONE_EDGE_NOTE, async_fellow_travel, replay_fftp
from pygrowth.subgroup import trivial_subgroup

from tests.fixtures import ball, config, word


class Test_AsyncFellowTravel(unittest.TestCase):
    def setUp(self):
        self.ball = ball("z2", 4)

    def test_detour(self):
        p = self.ball.path(word("z2", "xyX"))
        q = self.ball.path(word("z2", "y"))
        result = async_fellow_travel(self.ball, p, q, 1)
        self.assertTrue(result)
        self.assertEqual(result.staircase[0], (0, 0))
        self.assertEqual(result.staircase[-1], (3, 1))
        self.assertFalse(async_fellow_travel(self.ball, p, q, 0))

    def test_staircase_is_monotone(self):
        p = self.ball.path(word("z2", "xxyy"))
        q = self.ball.path(word("z2", "yyxx"))
        result = async_fellow_travel(self.ball, p, q, 2)
        self.assertTrue(result)
        for (i, j), (k, l) in zip(result.staircase, result.staircase[1:]):
            self.assertIn((k - i, l - j), ((1, 0), (0, 1), (1, 1)))
            self.assertLessEqual(self.ball.distance(p[k], q[l]), 2)
        self.assertEqual(result.staircase[-1], (4, 4))
        self.assertFalse(async_fellow_travel(self.ball, p, q, 1))

    def test_not_a_path(self):
        with self.assertRaises(InputError):
            async_fellow_travel(self.ball, [0, 5], [0], 1)
        with self.assertRaises(InputError):
            async_fellow_travel(self.ball, [], [0], 1)


class Test_Fftp(unittest.TestCase):
    def test_grid_passes(self):
        report = check_fftp(ball("z2", 9), 2, 6)
        self.assertTrue(report.passed)
        self.assertGreater(report.paths_checked, 0)
        self.assertIsNone(report.counterexample)
        self.assertIn(ONE_EDGE_NOTE, report.notes)

    def test_free_group_passes(self):
        self.assertTrue(check_fftp(ball("f2", 8), 1, 6).passed)

    def test_zero_constant_fails(self):
        b = ball("z2", 4)
        report = check_fftp(b, 0, 3)
        self.assertFalse(report.passed)
        self.assertEqual(report.counterexample, ("x", "X"))
        self.assertTrue(report.replay(b))
        self.assertFalse(replay_fftp(b, 0, ("x", "X")))

    def test_monotone_in_M(self):
        b = ball("dihedral", 9)
        for M in range(3):
            with self.subTest(M=M):
                if check_fftp(b, M, 5).passed:
                    self.assertTrue(check_fftp(b, M + 1, 5).passed)

    def test_radius_check(self):
        with self.assertRaises(ResourceError) as caught:
            check_fftp(ball("z2", 4), 2, 6)
        self.assertEqual(caught.exception.required, 9)


class Test_Projections(unittest.TestCase):
    def test_free_group_bounded(self):
        report = check_projections(ball("f2", 6), config("f2").subgroup("Ha"),
                                   1, 3, ProjectionMode.BOUNDED)
        self.assertTrue(report.passed)
        self.assertTrue(report.fellow_implied)
        self.assertGreater(report.edges_checked, 0)

    def test_coxeter_parabolic(self):
        report = check_projections(ball("s3", 6), config("s3").subgroup("Ws"),
                                   1, 3, ProjectionMode.BOUNDED)
        self.assertTrue(report.passed)

    def test_fellow_mode(self):
        report = check_projections(ball("z2", 6), trivial_subgroup(), 0, 3,
                                   ProjectionMode.FELLOW)
        self.assertTrue(report.passed)
        self.assertIsNone(report.fellow_implied)

    def test_counterexample(self):
        report = check_projections(ball("z2", 6), config("z2").subgroup("X"),
                                   0, 3, ProjectionMode.BOUNDED)
        self.assertFalse(report.passed)
        self.assertEqual(report.counterexample, ((), ("x",)))
        self.assertIsNone(report.fellow_implied)


if __name__ == "__main__":
    unittest.main()
