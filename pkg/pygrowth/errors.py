#!/usr/bin/env python
from __future__ import annotations
from typing import Sequence


class GrowthError(Exception):
    """Base class of every error raised by :mod:`pygrowth`"""


class InputError(GrowthError, ValueError):
    """Malformed input: unknown letters, words outside a ball,
       mismatched alphabets, unknown subgroup or subgraph names.
    """


class NonReducingRuleError(InputError):
    """A rewriting rule whose right-hand side is not strictly
       shortlex-smaller than its left-hand side.

       :param lhs: Offending left-hand side, as text
       :param rhs: Offending right-hand side, as text
    """

    def __init__(self, lhs: str, rhs: str):
        super().__init__(f"rule '{lhs} -> {rhs}' is not shortlex-reducing")
        self.lhs = lhs
        self.rhs = rhs


class ConfigError(InputError):
    """A syntax or validation error in a job configuration file.

       :param message: What went wrong
       :param line: 1-based line number
       :param column: 1-based column number
       :param source: Name of the file, for the message
    """

    def __init__(self, message: str, line: int, column: int = 1,
                 source: str = "<config>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.source = source


class ResourceError(GrowthError, RuntimeError):
    """A ball, radius or depth budget is too small for the request.

       :param message: What went wrong
       :param required: The radius or depth that would suffice, if known
       :param stats: Partial statistics gathered before giving up
    """

    def __init__(self, message: str, required: int | None = None,
                 stats: dict[str, int] | None = None):
        super().__init__(message)
        self.required = required
        self.stats = dict(stats or {})


class ParameterError(GrowthError, RuntimeError):
    """A numeric parameter (K, the fellow-traveler constant, ...) is too
       small for the hypothesis it is meant to certify.
    """


class SeriesError(GrowthError, ArithmeticError):
    """No linear recurrence of the permitted order fits a sequence"""


class OracleMismatch(GrowthError, AssertionError):
    """A series prefix disagrees with its brute-force oracle.

       :param name: Which series was being verified
       :param expected: Oracle counts
       :param actual: Series coefficients
    """

    def __init__(self, name: str, expected: Sequence, actual: Sequence):
        first = next((i for i, (e, a) in enumerate(zip(expected, actual))
                      if e != a), None)
        if first is None:
            super().__init__(f"{name}: {len(actual)} coefficients for "
                             f"{len(expected)} oracle values")
        else:
            super().__init__(
                f"{name}: coefficient {first} is {actual[first]}, "
                f"oracle says {expected[first]}")
        self.name = name
        self.expected = tuple(expected)
        self.actual = tuple(actual)


class InvariantError(GrowthError, AssertionError):
    """A meta-check that must hold by construction failed"""
