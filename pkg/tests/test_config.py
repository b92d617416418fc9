#!/usr/bin/env python
import unittest
import hashlib
import tempfile
from pathlib import Path

from pygrowth import ConfigError, Membership, Params, parse_config
from pygrowth.config import bundled_configs, parse_text

HEADER = """\
[alphabet]
letters = x X y Y
inverses = x:X y:Y

[rules]
x X ->
X x ->
y Y ->
Y y ->
y x -> x y
y X -> X y
Y x -> x Y
Y X -> X Y
"""


class Test_ParseConfig(unittest.TestCase):
    def test_bundled(self):
        names = [path.stem for path in bundled_configs()]
        self.assertEqual(names, ["dihedral", "f2", "s3", "z2"])
        for path in bundled_configs():
            with self.subTest(path=path.name):
                job = parse_config(path)
                self.assertEqual(job.source, path)
                self.assertEqual(job.digest, hashlib.sha256(
                    path.read_bytes()).hexdigest())

    def test_minimal(self):
        job = parse_text(HEADER)
        self.assertEqual(len(job.rewriting.rules), 8)
        self.assertEqual(job.params, Params())
        self.assertEqual(job.params.k, 1)
        self.assertEqual(job.alphabet.order, ("x", "X", "y", "Y"))

    def test_params(self):
        job = parse_text(HEADER + "[params]\nM = 2\nR = 6\nft = 3\n")
        self.assertEqual(job.params.M, 2)
        self.assertEqual(job.params.k, 4)
        self.assertEqual(job.params.ft_const, 3)
        self.assertEqual(job.params.R, 6)

    def test_subgroups(self):
        job = parse_text(HEADER + "[subgroup X]\ngenerators = x\n"
                         "membership = parabolic x X\n\n"
                         "[subgroup D]\ngenerators = xy, xY\n"
                         "membership = enumerate depth=16\n")
        X = job.subgroup("X")
        self.assertIs(X.strategy, Membership.PARABOLIC)
        self.assertEqual(X.letters, frozenset("xX"))
        D = job.subgroup("D")
        self.assertEqual(D.generators, (("x", "y"), ("x", "Y")))
        self.assertEqual(D.depth, 16)

    def test_subgraph(self):
        job = parse_text(HEADER + "[subgraph square]\n"
                         "vertices = ε; x; y; xy\n")
        self.assertEqual(job.subgraph("square").vertices,
                         ((), ("x",), ("y",), ("x", "y")))

    def test_language(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "job.gs"
            path.write_text(HEADER + "[language]\ndfa = half.dfa\n")
            job = parse_config(path)
        self.assertEqual(job.language, Path(tmp) / "half.dfa")

    def test_comments(self):
        job = parse_text("# a comment\n" + HEADER.replace(
            "letters = x X y Y", "letters = x X y Y  # trailing"))
        self.assertEqual(len(job.alphabet.letters), 4)


class Test_ConfigErrors(unittest.TestCase):
    def error(self, text: str) -> ConfigError:
        with self.assertRaises(ConfigError) as caught:
            parse_text(text)
        return caught.exception

    def test_non_reducing_rule(self):
        error = self.error(HEADER + "x -> x y\n")
        self.assertEqual(error.line, 14)
        self.assertIn("not shortlex-reducing", str(error))

    def test_enumerate_depth(self):
        error = self.error(HEADER + "[subgroup H]\ngenerators = x\n"
                           "membership = enumerate 4\n")
        self.assertIn("depth ≥ 16 required", str(error))
        self.assertEqual(error.line, 16)

    def test_unknown_letter(self):
        error = self.error(HEADER + "z x ->\n")
        self.assertEqual((error.line, error.column), (14, 1))

    def test_location_in_message(self):
        error = self.error("[alphabet]\nletters = a A\ninverses = a:A\n"
                           "[params]\nR = lots\n")
        self.assertEqual((error.line, error.column), (5, 5))
        self.assertTrue(str(error).startswith("<config>:5:5: "))

    def test_structure(self):
        cases = {
            "letters = a\n": "outside of any section",
            "[alphabet\n": "malformed section header",
            "[alphabet]\nletters = a A\ninverses = a:A\n[extras]\n":
                "unknown section",
            "[params]\nM = 1\n": "missing [alphabet]",
            "[alphabet]\nletters = a A\ninverses = aA\n": "bad inverse pair",
            "[alphabet]\nletters = a A\nletters = a A\n": "duplicate key",
            "[alphabet]\nletters = a A\ninverses = a:A\n[rules]\na A\n":
                "expected 'lhs -> rhs'",
            "[alphabet]\nletters = a A\ninverses = a:A\n[subgroup]\n":
                "needs a name",
            "[alphabet]\nletters = a A\ninverses = a:A\n[subgroup H]\n"
            "membership = guess\n": "unknown membership strategy",
            "[alphabet]\nletters = a A\ninverses = a:A\n[params]\nK = 0\n":
                "at least 1",
            "[alphabet]\nletters = a A\ninverses = a:A\n[params]\nQ = 0\n":
                "unknown key",
        }
        for text, message in cases.items():
            with self.subTest(message=message):
                self.assertIn(message, str(self.error(text)))

    def test_lookup(self):
        job = parse_text(HEADER)
        with self.assertRaises(ValueError):
            job.subgroup("H")
        with self.assertRaises(ValueError):
            job.subgraph("Z")


if __name__ == "__main__":
    unittest.main()
