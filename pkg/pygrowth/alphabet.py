#!/usr/bin/env python
from __future__ import annotations
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Iterable, Mapping

from .errors import InputError

#: A word over an :class:`Alphabet`: a tuple of letter symbols
Word = tuple[str, ...]

#: The empty word
EMPTY: Word = ()


class Ordering(IntEnum):
    """Result of :func:`shortlex_compare`"""

    LESS    = -1  #: first word precedes the second
    EQUAL   = 0   #: words are identical
    GREATER = 1   #: first word follows the second


@dataclass(frozen=True)
class Alphabet:
    """A symmetric generating set X = X⁻¹ with an involution and a
       total order used for shortlex comparison.

       :note: An Alphabet is a frozen :py:func:`~dataclasses.dataclass`
       :raises InputError: If the involution is not a self-inverse
                           bijection or *order* is not a permutation of
                           *letters*
    """

    letters: tuple[str, ...]   #: letters in declaration order
    inverses: tuple[str, ...]  #: ``inverses[i]`` is the inverse of ``letters[i]``
    order: tuple[str, ...]     #: shortlex order, least letter first

    def __post_init__(self):
        if len(set(self.letters)) != len(self.letters):
            raise InputError(f"repeated letter in {self.letters}")
        if len(self.inverses) != len(self.letters):
            raise InputError("every letter needs exactly one inverse")
        known = set(self.letters)
        pairing = dict(zip(self.letters, self.inverses))
        for letter, inverse in pairing.items():
            if inverse not in known:
                raise InputError(f"inverse '{inverse}' of '{letter}' "
                                 "is not a letter")
            if pairing[inverse] != letter:
                raise InputError(f"involution is not self-inverse at "
                                 f"'{letter}'")
        if sorted(self.order) != sorted(self.letters):
            raise InputError("order must list every letter exactly once")

    @staticmethod
    def from_pairs(letters: Iterable[str], pairs: Mapping[str, str],
                   order: Iterable[str] | None = None) -> Alphabet:
        """Build an Alphabet from declared inverse pairs.

           :param letters: Letters in declaration order
           :param pairs: Any mapping covering each pair once in either
                         direction, e.g. ``{"a": "A", "s": "s"}``
           :param order: Shortlex order; defaults to *letters*
        """
        letters = tuple(letters)
        table: dict[str, str] = {}
        for left, right in pairs.items():
            table[left] = right
            table[right] = left
        missing = [x for x in letters if x not in table]
        if missing:
            raise InputError(f"no inverse declared for {missing}")
        return Alphabet(letters, tuple(table[x] for x in letters),
                        tuple(order) if order is not None else letters)

    @cached_property
    def _inverse(self) -> dict[str, str]:
        return dict(zip(self.letters, self.inverses))

    @cached_property
    def _rank(self) -> dict[str, int]:
        return {letter: i for i, letter in enumerate(self.order)}

    @cached_property
    def compact(self) -> bool:
        """:data:`True` if every letter is one character, so words can be
           written without separators"""
        return all(len(x) == 1 for x in self.letters)

    def inverse(self, letter: str) -> str:
        """Return the inverse of *letter*

           :raises InputError: If *letter* is not in this Alphabet
        """
        try:
            return self._inverse[letter]
        except KeyError:
            raise InputError(f"unknown letter '{letter}'") from None

    def rank(self, letter: str) -> int:
        """Position of *letter* in the shortlex order"""
        try:
            return self._rank[letter]
        except KeyError:
            raise InputError(f"unknown letter '{letter}'") from None

    def check(self, word: Iterable[str]) -> Word:
        """Return *word* as a :data:`Word`, verifying every letter"""
        word = tuple(word)
        for letter in word:
            if letter not in self._rank:
                raise InputError(f"unknown letter '{letter}' in "
                                 f"{' '.join(word)!r}")
        return word

    def parse(self, text: str) -> Word:
        """Parse *text* into a :data:`Word`.

           Whitespace separates letters. A token that is not itself a letter
           is split into characters when every character is a letter, so
           ``"abBA"`` and ``"a b B A"`` read the same over a compact
           alphabet. ``"ε"`` and the empty string are the empty word.

           :raises InputError: On an unknown letter
        """
        word: list[str] = []
        for token in text.split():
            if token == "ε":
                continue
            if token in self._rank:
                word.append(token)
            elif all(ch in self._rank for ch in token):
                word.extend(token)
            else:
                raise InputError(f"unknown letter in '{token}'")
        return tuple(word)

    def format(self, word: Word) -> str:
        """Inverse of :meth:`parse`; the empty word formats as ``""``"""
        return ("" if self.compact else " ").join(word)

    def sort_key(self, word: Word) -> tuple[int, tuple[int, ...]]:
        """Key realizing the shortlex order under :func:`sorted`"""
        return len(word), tuple(self.rank(x) for x in word)


def shortlex_compare(alphabet: Alphabet, a: Word, b: Word) -> Ordering:
    """Compare *a* and *b* in shortlex order: shorter first, then
       lexicographically by the alphabet order.

       :raises InputError: If either word uses a letter outside *alphabet*
    """
    key_a, key_b = alphabet.sort_key(a), alphabet.sort_key(b)
    if key_a < key_b:
        return Ordering.LESS
    if key_a > key_b:
        return Ordering.GREATER
    return Ordering.EQUAL


def invert_word(alphabet: Alphabet, word: Word) -> Word:
    """Return x_n⁻¹ ... x_1⁻¹ for *word* = x_1 ... x_n"""
    return tuple(alphabet.inverse(x) for x in reversed(word))
