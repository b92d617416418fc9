#!/usr/bin/env python
import unittest

from pygrowth import RationalSeries, RunReport


class Test_RunReport(unittest.TestCase):
    def setUp(self):
        self.report = RunReport("growth kind=sphere", "abc123")

    def test_passed(self):
        self.assertTrue(self.report.passed)
        self.report.verdict("sphere oracle", True, "13 coefficients")
        self.assertTrue(self.report.passed)
        self.report.verdict("fftp", False)
        self.assertFalse(self.report.passed)

    def test_render(self):
        self.report.verdict("sphere oracle", True, "3 coefficients")
        self.report.add_series("sphere", RationalSeries.from_coefficients(
            [1, 1], [1, -1], [1, 2, 2]))
        self.report.value("states", 4)
        self.report.note("checked")
        self.report.note("checked")
        self.assertEqual(self.report.render(timings=False), (
            "command: growth kind=sphere\n"
            "config: sha256:abc123\n"
            "verdict sphere oracle: pass (3 coefficients)\n"
            "series sphere: num=[1,1] den=[1,-1] prefix=[1,2,2]\n"
            "states: 4\n"
            "diagnostic: checked\n"
            "status: ok\n"))

    def test_failed_status(self):
        self.report.verdict("fftp", False)
        self.assertIn("verdict fftp: FAIL\n", self.report.render())
        self.assertIn("status: failed\n", self.report.render())

    def test_timings(self):
        with self.report.timed("growth"):
            pass
        rendered = self.report.render()
        self.assertIn("--- timings ---\ngrowth: ", rendered)
        self.assertNotIn("timings", self.report.render(timings=False))

    def test_merge(self):
        other = RunReport("all", "def456")
        other.verdict("fftp", False)
        other.value("states", 6)
        other.note("completed")
        self.report.merge(other, "f2")
        self.assertFalse(self.report.passed)
        self.assertEqual(self.report.verdicts[0].name, "f2/fftp")
        self.assertEqual(self.report.values, [("f2/states", "6")])
        self.assertEqual(self.report.diagnostics, ["f2: completed"])


if __name__ == "__main__":
    unittest.main()
