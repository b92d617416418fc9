#!/usr/bin/env python
import unittest

from pygrowth import Alphabet, InputError, invert_word, shortlex_compare
from pygrowth.alphabet import Ordering


class Test_Alphabet(unittest.TestCase):
    def setUp(self):
        self.alphabet = Alphabet.from_pairs("xXyY", {"x": "X", "y": "Y"})

    def test_from_pairs(self):
        self.assertEqual(self.alphabet.inverses, ("X", "x", "Y", "y"))
        self.assertEqual(self.alphabet.order, ("x", "X", "y", "Y"))

    def test_self_inverse(self):
        alphabet = Alphabet.from_pairs("st", {"s": "s", "t": "t"})
        self.assertEqual(alphabet.inverse("s"), "s")

    def test_missing_inverse(self):
        with self.assertRaises(InputError):
            Alphabet.from_pairs("xXy", {"x": "X"})

    def test_bad_involution(self):
        with self.assertRaises(InputError):
            Alphabet(("a", "b", "c"), ("b", "c", "a"), ("a", "b", "c"))

    def test_bad_order(self):
        with self.assertRaises(InputError):
            Alphabet.from_pairs("xX", {"x": "X"}, order="xx")

    def test_unknown_letter(self):
        with self.assertRaises(InputError):
            self.alphabet.inverse("z")
        with self.assertRaises(InputError):
            self.alphabet.check(("x", "z"))

    def test_parse(self):
        self.assertEqual(self.alphabet.parse("xyX"), ("x", "y", "X"))
        self.assertEqual(self.alphabet.parse("x y X"), ("x", "y", "X"))
        self.assertEqual(self.alphabet.parse("ε"), ())
        self.assertEqual(self.alphabet.parse(""), ())
        with self.assertRaises(InputError):
            self.alphabet.parse("xz")

    def test_format(self):
        self.assertEqual(self.alphabet.format(("x", "Y")), "xY")
        long = Alphabet.from_pairs(["a1", "A1"], {"a1": "A1"})
        self.assertEqual(long.format(("a1", "A1")), "a1 A1")
        self.assertEqual(long.parse("a1 A1"), ("a1", "A1"))


class Test_Shortlex(unittest.TestCase):
    def setUp(self):
        self.alphabet = Alphabet.from_pairs("xXyY", {"x": "X", "y": "Y"})

    def compare(self, a: str, b: str) -> Ordering:
        return shortlex_compare(self.alphabet, self.alphabet.parse(a),
                                self.alphabet.parse(b))

    def test_length_first(self):
        self.assertIs(self.compare("Y", "xx"), Ordering.LESS)
        self.assertIs(self.compare("xxx", "YY"), Ordering.GREATER)

    def test_lexicographic(self):
        self.assertIs(self.compare("xy", "yx"), Ordering.LESS)
        self.assertIs(self.compare("xY", "Xy"), Ordering.LESS)
        self.assertIs(self.compare("xY", "xY"), Ordering.EQUAL)

    def test_sort_key(self):
        words = [self.alphabet.parse(w) for w in ("yx", "Y", "xy", "", "X")]
        ordered = sorted(words, key=self.alphabet.sort_key)
        self.assertEqual([self.alphabet.format(w) for w in ordered],
                         ["", "X", "Y", "xy", "yx"])

    def test_invert_word(self):
        self.assertEqual(invert_word(self.alphabet, ("x", "y", "X")),
                         ("x", "Y", "X"))
        word = ("x", "x", "Y")
        self.assertEqual(invert_word(self.alphabet,
                                     invert_word(self.alphabet, word)), word)


if __name__ == "__main__":
    unittest.main()
