#!/usr/bin/env python
from __future__ import annotations
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator
import time

from .series import RationalSeries


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class RunReport:
    """Structured result of one subcommand.

       :meth:`render` is deterministic for a given configuration except for
       the trailing timings block.
    """

    command: str
    digest: str
    verdicts: list[Verdict] = field(default_factory=list)
    series: list[tuple[str, RationalSeries]] = field(default_factory=list)
    values: list[tuple[str, str]] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def verdict(self, name: str, passed: bool, detail: str = ""):
        self.verdicts.append(Verdict(name, bool(passed), detail))

    def add_series(self, name: str, series: RationalSeries):
        self.series.append((name, series))

    def value(self, name: str, text: object):
        self.values.append((name, str(text)))

    def note(self, text: str):
        if text not in self.diagnostics:
            self.diagnostics.append(text)

    def merge(self, other: RunReport, prefix: str):
        """Fold a sub-report in, prefixing its names"""
        self.verdicts += [Verdict(f"{prefix}/{v.name}", v.passed, v.detail)
                          for v in other.verdicts]
        self.series += [(f"{prefix}/{n}", s) for n, s in other.series]
        self.values += [(f"{prefix}/{n}", s) for n, s in other.values]
        for text in other.diagnostics:
            self.note(f"{prefix}: {text}")
        self.timings.update({f"{prefix}/{n}": s
                             for n, s in other.timings.items()})

    @contextmanager
    def timed(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = self.timings.get(name, 0.0) \
                + time.perf_counter() - start

    def render(self, timings: bool = True) -> str:
        lines = [f"command: {self.command}", f"config: sha256:{self.digest}"]
        for v in self.verdicts:
            status = "pass" if v.passed else "FAIL"
            lines.append(f"verdict {v.name}: {status}"
                         + (f" ({v.detail})" if v.detail else ""))
        lines += [f"series {name}: {s.format()}" for name, s in self.series]
        lines += [f"{name}: {text}" for name, text in self.values]
        lines += [f"diagnostic: {text}" for text in self.diagnostics]
        lines.append(f"status: {'ok' if self.passed else 'failed'}")
        if timings and self.timings:
            lines.append("--- timings ---")
            lines += [f"{name}: {seconds:.3f}s"
                      for name, seconds in self.timings.items()]
        return "\n".join(lines) + "\n"
