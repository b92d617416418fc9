#!/usr/bin/env python
import unittest

from pygrowth import (CountKind, ResourceError, brute_force_counts,
                      shortlex_transversal_acceptor)
from pygrowth.subgroup import trivial_subgroup
from pygrowth.transversal import shortlex_coset_minima

from tests.fixtures import automaton, ball, config


class Test_CosetMinima(unittest.TestCase):
    def test_coxeter(self):
        minima = shortlex_coset_minima(ball("s3", 6),
                                       config("s3").subgroup("Ws"), 4)
        self.assertEqual(minima, [(), ("t",), ("s", "t")])

    def test_trivial_subgroup_gives_normal_forms(self):
        b = ball("z2", 3)
        self.assertEqual(shortlex_coset_minima(b, trivial_subgroup(), 3),
                         list(b.words))


class Test_TransversalAcceptor(unittest.TestCase):
    def test_shortlex_normal_forms(self):
        b = ball("z2", 10)
        machine = shortlex_transversal_acceptor(automaton("z2", 4, 10), b,
                                                trivial_subgroup(), 4)
        length_two = [w for w in machine.accepted_words(2) if len(w) == 2]
        self.assertEqual(["".join(w) for w in length_two],
                         ["xx", "xy", "xY", "XX", "Xy", "XY", "yy", "YY"])
        self.assertEqual(machine.count_accepted(8), b.sphere_sizes()[:9])

    def test_free_group(self):
        b = ball("f2", 9)
        H = config("f2").subgroup("Ha")
        machine = shortlex_transversal_acceptor(automaton("f2", 1, 9), b, H,
                                                1, check_len=8)
        counts = machine.count_accepted(8)
        self.assertEqual(counts, [1] + [2 * 3 ** (n - 1) for n in range(1, 9)])
        self.assertEqual(counts, brute_force_counts(b, CountKind.COSET, 8, H))
        self.assertEqual(list(machine.accepted_words(8)),
                         shortlex_coset_minima(b, H, 8))
        self.assertFalse(machine.accepts(("a",)))
        self.assertFalse(machine.accepts(("b", "a")))
        self.assertTrue(machine.accepts(("a", "b")))

    def test_coxeter(self):
        machine = shortlex_transversal_acceptor(
            automaton("s3", 4, 10), ball("s3", 10),
            config("s3").subgroup("Ws"), 4)
        self.assertEqual(list(machine.accepted_words(8)),
                         [(), ("t",), ("s", "t")])

    def test_ball_too_small(self):
        with self.assertRaises(ResourceError):
            shortlex_transversal_acceptor(automaton("f2", 1), ball("f2", 4),
                                          config("f2").subgroup("Ha"), 6)


if __name__ == "__main__":
    unittest.main()
