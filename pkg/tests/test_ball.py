#!/usr/bin/env python
import unittest
import tempfile
from pathlib import Path

from pygrowth import Ball, InputError, ResourceError, build_ball
from pygrowth.ball import OUTSIDE, restricted_distances

from tests.fixtures import ball, rewriting, word


class Test_Ball(unittest.TestCase):
    def setUp(self):
        self.ball = ball("z2", 4)

    def test_sizes(self):
        self.assertEqual(ball("z2", 2).ball_sizes(), [1, 5, 13])
        self.assertEqual(self.ball.sphere_sizes(), [1, 4, 8, 12, 16])
        self.assertEqual(ball("f2", 3).sphere_sizes(), [1, 4, 12, 36])

    def test_finite_group(self):
        s3 = ball("s3", 5)
        self.assertEqual(len(s3), 6)
        self.assertEqual(s3.sphere_sizes(), [1, 2, 2, 1, 0, 0])

    def test_shortlex_numbering(self):
        self.assertEqual(self.ball.words[:5],
                         ((), ("x",), ("X",), ("y",), ("Y",)))
        for v in range(1, len(self.ball)):
            self.assertLessEqual(self.ball.dist[v - 1], self.ball.dist[v])

    def test_count_within(self):
        self.assertEqual(self.ball.count_within(-1), 0)
        self.assertEqual(self.ball.count_within(1), 5)
        self.assertEqual(self.ball.count_within(10), len(self.ball))

    def test_id_of(self):
        v = self.ball.id_of(word("z2", "yx"))
        self.assertEqual(self.ball.words[v], ("x", "y"))
        with self.assertRaises(InputError):
            self.ball.id_of(word("z2", "xxxxx"))
        self.assertIs(self.ball.find(word("z2", "xxxxx")), OUTSIDE)

    def test_adjacency(self):
        v = self.ball.id_of(word("z2", "xxxx"))
        self.assertIsNone(self.ball.neighbor(v, "x"))
        self.assertEqual(self.ball.neighbor(v, "X"),
                         self.ball.id_of(word("z2", "xxx")))
        self.assertIsNone(self.ball.follow(0, word("z2", "xxxxx")))

    def test_path(self):
        path = self.ball.path(word("z2", "xyX"))
        self.assertEqual(path[-1], self.ball.id_of(("y",)))
        with self.assertRaises(InputError):
            self.ball.path(word("z2", "yyyyy"))

    def test_distance(self):
        u = self.ball.id_of(word("z2", "xx"))
        v = self.ball.id_of(word("z2", "YY"))
        self.assertEqual(self.ball.distance(u, v), 4)
        self.assertEqual(self.ball.difference(u, v), ("X", "X", "Y", "Y"))

    def test_distance_beyond_ball(self):
        u = self.ball.id_of(word("z2", "xxxx"))
        v = self.ball.id_of(word("z2", "XXXX"))
        self.assertEqual(self.ball.distance(u, v), 8)

    def test_bfs_within(self):
        reached = self.ball.bfs(0, within=1)
        self.assertEqual(sorted(reached.values()), [0, 1, 1, 1, 1])

    def test_budget(self):
        with self.assertRaises(ResourceError) as caught:
            build_ball(rewriting("f2"), 6, max_vertices=100)
        self.assertEqual(caught.exception.stats["vertices"], 100)

    def test_dump_load(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "ball.txt"
            self.ball.dump(path)
            loaded = Ball.load(path, self.ball.rewriting)
        self.assertEqual(loaded.words, self.ball.words)
        self.assertEqual(loaded.dist, self.ball.dist)
        self.assertEqual(loaded.adjacency, self.ball.adjacency)
        self.assertEqual(loaded.sphere_sizes(), self.ball.sphere_sizes())


class Test_RestrictedDistances(unittest.TestCase):
    def test_detour_inside_ball(self):
        b = ball("z2", 4)
        table = restricted_distances(b, 2)
        self.assertEqual(table.size, 13)
        u = b.id_of(word("z2", "xx"))
        v = b.id_of(word("z2", "yy"))
        self.assertEqual(table(u, v), 4)
        self.assertEqual(table(0, u), 2)

    def test_path_through_identity(self):
        # the 1-ball of the dihedral group is a path a - 1 - b
        b = ball("dihedral", 3)
        table = b.restricted_distances(1)
        a, c = b.id_of(("a",)), b.id_of(("b",))
        self.assertEqual(table(a, c), 2)

    def test_radius_too_small(self):
        with self.assertRaises(ResourceError):
            restricted_distances(ball("z2", 2), 3)


if __name__ == "__main__":
    unittest.main()
