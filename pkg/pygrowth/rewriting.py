#!/usr/bin/env python
from __future__ import annotations
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Iterator
import logging
import warnings

from .alphabet import Alphabet, Ordering, Word, shortlex_compare
from .errors import InputError, NonReducingRuleError

logger = logging.getLogger(__name__)

#: A rewriting rule ``lhs -> rhs``
Rule = tuple[Word, Word]


class _Rewriter:
    """Leftmost-innermost string rewriting with a fixed rule list.

       Letters are pushed onto an irreducible stack one at a time; since
       the stack is irreducible before each push, any redex is a suffix.
    """

    def __init__(self, rules: Iterable[Rule]):
        self._index: dict[Word, Word] = {}
        for lhs, rhs in rules:
            self._index.setdefault(lhs, rhs)
        self._lengths = sorted({len(lhs) for lhs in self._index})

    def reduce(self, word: Word, prefix: Word = ()) -> Word:
        """Normal form of *prefix* + *word*, where *prefix* is irreducible"""
        stack = list(prefix)
        pending = list(reversed(word))
        index, lengths = self._index, self._lengths
        while pending:
            stack.append(pending.pop())
            for n in lengths:
                if n > len(stack):
                    break
                rhs = index.get(tuple(stack[-n:]))
                if rhs is not None:
                    del stack[-n:]
                    pending.extend(reversed(rhs))
                    break
        return tuple(stack)


@dataclass(frozen=True)
class RewritingSystem:
    """Shortlex-reducing rewriting rules over an :class:`Alphabet`.

       Every rule must satisfy rhs <_SL lhs, which makes normalization
       terminate. When *confluent* is set, normal forms name group
       elements and are their shortlex-least (hence geodesic)
       representatives.

       :raises InputError: If a rule uses an unknown letter
       :raises NonReducingRuleError: If some rule is not shortlex-reducing
    """

    alphabet: Alphabet
    rules: tuple[Rule, ...]
    confluent: bool = False

    def __post_init__(self):
        for lhs, rhs in self.rules:
            self.alphabet.check(lhs)
            self.alphabet.check(rhs)
            if shortlex_compare(self.alphabet, rhs, lhs) is not Ordering.LESS:
                raise NonReducingRuleError(self.alphabet.format(lhs),
                                           self.alphabet.format(rhs))

    @cached_property
    def _rewriter(self) -> _Rewriter:
        return _Rewriter(self.rules)

    def normalize(self, word: Word) -> Word:
        """Shortcut for :func:`normalize`"""
        return self._rewriter.reduce(word)

    def extend(self, normal_form: Word, word: Word) -> Word:
        """Normal form of *normal_form* followed by *word*.

           Cheaper than :meth:`normalize` on the concatenation because the
           irreducible prefix is not rescanned.
        """
        return self._rewriter.reduce(word, normal_form)

    def format_rule(self, rule: Rule) -> str:
        lhs, rhs = rule
        return f"{self.alphabet.format(lhs) or 'ε'} -> " \
               f"{self.alphabet.format(rhs) or 'ε'}"


def normalize(rs: RewritingSystem, word: Word) -> Word:
    """Rewrite *word* to an irreducible word, leftmost-innermost.

       :param rs: Rewriting system whose rules are shortlex-reducing
       :param word: Word over ``rs.alphabet``

       :return: An irreducible word, shortlex no larger than *word*. For a
                confluent *rs* it depends only on the group element.
    """
    return rs.normalize(word)


@dataclass(frozen=True)
class ConfluenceReport:
    """Outcome of :func:`check_confluence`.

       A failing report carries the overlap word and its two distinct
       normal forms.
    """

    confluent: bool
    pairs_checked: int
    word: Word | None = None
    normal_forms: tuple[Word, Word] | None = None

    def __bool__(self) -> bool:
        return self.confluent


def _critical_pairs(rules: tuple[Rule, ...]) -> Iterator[tuple[Word, Word, Word]]:
    """Yield ``(word, left_reduct, right_reduct)`` for every overlap and
       every inclusion between two left-hand sides."""
    for i, (l1, r1) in enumerate(rules):
        for j, (l2, r2) in enumerate(rules):
            # l2 inside l1
            if len(l2) <= len(l1):
                for at in range(len(l1) - len(l2) + 1):
                    if i == j and at == 0:
                        continue
                    if l1[at:at + len(l2)] == l2:
                        yield l1, r1, l1[:at] + r2 + l1[at + len(l2):]
            # suffix of l1 is a proper prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    yield l1 + l2[k:], r1 + l2[k:], l1[:-k] + r2


def check_confluence(rs: RewritingSystem) -> ConfluenceReport:
    """Resolve every critical pair of *rs*.

       :return: A :class:`ConfluenceReport`; the first unresolved pair in
                rule order is reported as counterexample
    """
    checked = 0
    for word, left, right in _critical_pairs(rs.rules):
        checked += 1
        a, b = rs.normalize(left), rs.normalize(right)
        if a != b:
            return ConfluenceReport(False, checked, word, (a, b))
    return ConfluenceReport(True, checked)


@dataclass(frozen=True)
class Incomplete:
    """Returned by :func:`complete` when a budget runs out"""

    partial: RewritingSystem  #: rules gathered so far, interreduced
    reason: str               #: which limit was hit
    rounds: int               #: completion rounds performed


def _orient(alphabet: Alphabet, a: Word, b: Word) -> Rule:
    if shortlex_compare(alphabet, a, b) is Ordering.GREATER:
        return a, b
    return b, a


def _interreduce(alphabet: Alphabet, rules: list[Rule]) -> list[Rule]:
    """Make every lhs irreducible modulo the other rules and every rhs
       irreducible; rules whose lhs becomes reducible are re-oriented or
       dropped."""
    rules = list(dict.fromkeys(rules))
    changed = True
    while changed:
        changed = False
        for i, (lhs, rhs) in enumerate(rules):
            others = _Rewriter(rules[:i] + rules[i + 1:])
            new_lhs = others.reduce(lhs)
            new_rhs = others.reduce(rhs)
            if new_lhs != lhs:
                del rules[i]
                if new_lhs != new_rhs:
                    rule = _orient(alphabet, new_lhs, new_rhs)
                    if rule not in rules:
                        rules.append(rule)
                changed = True
                break
            if new_rhs != rhs:
                rules[i] = (lhs, new_rhs)
                changed = True
    rules.sort(key=lambda rule: (alphabet.sort_key(rule[0]),
                                 alphabet.sort_key(rule[1])))
    return rules


def complete(rs: RewritingSystem,
             max_rules: int = 200,
             max_len: int = 20,
             max_rounds: int = 100) -> RewritingSystem | Incomplete:
    """Bounded Knuth-Bendix completion with respect to shortlex.

       Unresolved critical pairs are oriented into new rules and the system
       is interreduced after every round.

       :param rs: Starting system
       :param max_rules: Give up once the interreduced system has more rules
       :param max_len: Give up once a new lhs is longer than this
       :param max_rounds: Give up after this many rounds

       :return: A confluent :class:`RewritingSystem` equivalent to *rs*
                (*rs* itself, flagged confluent, if it already was), or
                :class:`Incomplete` carrying the partial system
    """
    if check_confluence(rs):
        return rs if rs.confluent else replace(rs, confluent=True)

    alphabet = rs.alphabet
    rules = _interreduce(alphabet, list(rs.rules))
    for rounds in range(1, max_rounds + 1):
        system = RewritingSystem(alphabet, tuple(rules))
        pending: list[Rule] = []
        for _, left, right in _critical_pairs(system.rules):
            a, b = system.normalize(left), system.normalize(right)
            if a != b:
                rule = _orient(alphabet, a, b)
                if rule not in pending:
                    pending.append(rule)
        logger.debug("completion round %d: %d rules, %d new",
                     rounds, len(rules), len(pending))
        if not pending:
            logger.info("completion finished after %d rounds with %d rules",
                        rounds, len(rules))
            return replace(system, confluent=True)

        too_long = [rule for rule in pending if len(rule[0]) > max_len]
        if too_long:
            return _give_up(system, f"lhs longer than max_len={max_len}",
                            rounds)
        rules = _interreduce(alphabet, rules + pending)
        if len(rules) > max_rules:
            return _give_up(RewritingSystem(alphabet, tuple(rules)),
                            f"more than max_rules={max_rules} rules", rounds)
    return _give_up(RewritingSystem(alphabet, tuple(rules)),
                    f"no fixpoint after max_rounds={max_rounds}", max_rounds)


def _give_up(partial: RewritingSystem, reason: str, rounds: int) -> Incomplete:
    warnings.warn(f"completion incomplete: {reason}", RuntimeWarning)
    return Incomplete(partial, reason, rounds)


def require_confluent(rs: RewritingSystem) -> RewritingSystem:
    """Return *rs* flagged confluent, verifying it if not yet flagged.

       :raises InputError: If *rs* has an unresolved critical pair
    """
    if rs.confluent:
        return rs
    report = check_confluence(rs)
    if not report:
        word = rs.alphabet.format(report.word)
        raise InputError(f"rewriting system is not confluent: '{word}' "
                         "has two normal forms")
    return replace(rs, confluent=True)
