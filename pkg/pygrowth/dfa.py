#!/usr/bin/env python
from __future__ import annotations
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterator, Sequence

from . import StateId
from .alphabet import Word
from .errors import InputError


@dataclass(frozen=True)
class DFA:
    """A total deterministic automaton over an ordered list of letters.

       ``transitions[s][i]`` is the target of state *s* on ``letters[i]``.
       The letter order is the shortlex order used for discovery numbering
       and export.

       :note: A DFA is a frozen :py:func:`~dataclasses.dataclass`
       :raises InputError: If the transition table is not total
    """

    letters: tuple[str, ...]
    transitions: tuple[tuple[StateId, ...], ...]
    initial: StateId
    accepting: frozenset[StateId]

    def __post_init__(self):
        n = len(self.transitions)
        if not 0 <= self.initial < n:
            raise InputError(f"initial state {self.initial} out of range")
        for s, row in enumerate(self.transitions):
            if len(row) != len(self.letters):
                raise InputError(f"state {s} is missing transitions")
            if any(not 0 <= t < n for t in row):
                raise InputError(f"state {s} has a dangling transition")
        if any(not 0 <= s < n for s in self.accepting):
            raise InputError("accepting state out of range")

    def __len__(self) -> int:
        return len(self.transitions)

    @cached_property
    def _slot(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.letters)}

    def step(self, state: StateId, letter: str) -> StateId:
        try:
            return self.transitions[state][self._slot[letter]]
        except KeyError:
            raise InputError(f"unknown letter '{letter}'") from None

    def run(self, word: Word, state: StateId | None = None) -> StateId:
        state = self.initial if state is None else state
        for letter in word:
            state = self.step(state, letter)
        return state

    def accepts(self, word: Word) -> bool:
        return self.run(word) in self.accepting

    def canonical(self) -> DFA:
        """Drop unreachable states and renumber the rest in discovery
           order (breadth first, letters in order)"""
        order = [self.initial]
        number = {self.initial: 0}
        for s in order:
            for t in self.transitions[s]:
                if t not in number:
                    number[t] = len(order)
                    order.append(t)
        return DFA(self.letters,
                   tuple(tuple(number[t] for t in self.transitions[s])
                         for s in order),
                   0,
                   frozenset(number[s] for s in order
                             if s in self.accepting))

    def live_states(self) -> frozenset[StateId]:
        """States from which some accepting state is reachable"""
        incoming: list[list[StateId]] = [[] for _ in self.transitions]
        for s, row in enumerate(self.transitions):
            for t in row:
                incoming[t].append(s)
        live = set(self.accepting)
        queue = deque(self.accepting)
        while queue:
            t = queue.popleft()
            for s in incoming[t]:
                if s not in live:
                    live.add(s)
                    queue.append(s)
        return frozenset(live)

    def minimize(self) -> tuple[DFA, dict[StateId, StateId]]:
        """Moore partition refinement.

           :return: The minimal DFA in canonical numbering and a map from
                    each reachable state of this DFA to its class
        """
        trimmed = self.canonical()
        reached = self._reached_numbering()
        block = [int(s in trimmed.accepting) for s in range(len(trimmed))]
        count = len(set(block))
        while True:
            signatures: dict[tuple[int, ...], int] = {}
            refined = []
            for s, row in enumerate(trimmed.transitions):
                key = (block[s],) + tuple(block[t] for t in row)
                refined.append(signatures.setdefault(key, len(signatures)))
            block = refined
            if len(signatures) == count:
                break
            count = len(signatures)
        table: dict[int, tuple[StateId, ...]] = {}
        for s, row in enumerate(trimmed.transitions):
            table.setdefault(block[s], tuple(block[t] for t in row))
        quotient = DFA(self.letters,
                       tuple(table[b] for b in range(count)),
                       block[trimmed.initial],
                       frozenset(block[s] for s in trimmed.accepting))
        minimal = quotient.canonical()
        renumber = quotient._reached_numbering()
        return minimal, {s: renumber[block[t]] for s, t in reached.items()}

    def _reached_numbering(self) -> dict[StateId, StateId]:
        order = [self.initial]
        number = {self.initial: 0}
        for s in order:
            for t in self.transitions[s]:
                if t not in number:
                    number[t] = len(order)
                    order.append(t)
        return number

    def product(self, other: DFA) -> DFA:
        """Intersection automaton over this DFA's letter order

           :raises InputError: If the alphabets differ
        """
        if set(self.letters) != set(other.letters):
            raise InputError(f"alphabet mismatch: {self.letters} vs "
                             f"{other.letters}")
        start = (self.initial, other.initial)
        number = {start: 0}
        order = [start]
        rows = []
        for a, b in order:
            row = []
            for letter in self.letters:
                pair = (self.step(a, letter), other.step(b, letter))
                if pair not in number:
                    number[pair] = len(order)
                    order.append(pair)
                row.append(number[pair])
            rows.append(tuple(row))
        accepting = frozenset(
            i for i, (a, b) in enumerate(order)
            if a in self.accepting and b in other.accepting)
        return DFA(self.letters, tuple(rows), 0, accepting)

    def count_accepted(self, max_len: int) -> list[int]:
        """Number of accepted words of each length 0..*max_len*"""
        counts = []
        vector = {self.initial: 1}
        for _ in range(max_len + 1):
            counts.append(sum(c for s, c in vector.items()
                              if s in self.accepting))
            following: dict[StateId, int] = {}
            for s, c in vector.items():
                for t in self.transitions[s]:
                    following[t] = following.get(t, 0) + c
            vector = following
        return counts

    def accepted_words(self, max_len: int) -> Iterator[Word]:
        """Accepted words of length ≤ *max_len* in shortlex order, skipping
           dead branches"""
        live = self.live_states()
        layer: list[tuple[Word, StateId]] = [((), self.initial)]
        for length in range(max_len + 1):
            following = []
            for word, s in layer:
                if s in self.accepting:
                    yield word
                if length == max_len:
                    continue
                for letter, t in zip(self.letters, self.transitions[s]):
                    if t in live:
                        following.append((word + (letter,), t))
            layer = following

    def is_isomorphic(self, other: DFA) -> bool:
        """Isomorphism of the reachable parts, respecting letters, initial
           and accepting states"""
        if set(self.letters) != set(other.letters):
            return False
        mapping = {self.initial: other.initial}
        queue = deque([self.initial])
        while queue:
            s = queue.popleft()
            t = mapping[s]
            if (s in self.accepting) != (t in other.accepting):
                return False
            for letter in self.letters:
                a, b = self.step(s, letter), other.step(t, letter)
                if a in mapping:
                    if mapping[a] != b:
                        return False
                else:
                    mapping[a] = b
                    queue.append(a)
        return len(set(mapping.values())) == len(mapping)

    def dumps(self) -> str:
        """Canonical text: ``states N initial I``, ``accept ...``, then one
           ``state letter state`` line per transition"""
        machine = self.canonical()
        lines = [f"states {len(machine)} initial {machine.initial}",
                 " ".join(["accept"] + [str(s) for s in
                                        sorted(machine.accepting)])]
        for s, row in enumerate(machine.transitions):
            for letter, t in zip(machine.letters, row):
                lines.append(f"{s} {letter} {t}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def loads(text: str, letters: Sequence[str] | None = None) -> DFA:
        """Parse :meth:`dumps` output.

           :param letters: Letter order; defaults to order of first
                           appearance

           :raises InputError: On a malformed description
        """
        lines = [line.split() for line in text.splitlines() if line.strip()]
        if len(lines) < 2 or len(lines[0]) != 4 or lines[0][0] != "states" \
                or lines[0][2] != "initial" or lines[1][:1] != ["accept"]:
            raise InputError("DFA text must start with 'states N initial I'"
                             " and an 'accept' line")
        n, initial = int(lines[0][1]), int(lines[0][3])
        accepting = frozenset(int(s) for s in lines[1][1:])
        edges: dict[tuple[int, str], int] = {}
        seen: list[str] = []
        for number, cells in enumerate(lines[2:], start=3):
            if len(cells) != 3:
                raise InputError(f"line {number}: expected 'state letter "
                                 "state'")
            s, letter, t = int(cells[0]), cells[1], int(cells[2])
            if (s, letter) in edges:
                raise InputError(f"line {number}: duplicate transition")
            edges[(s, letter)] = t
            if letter not in seen:
                seen.append(letter)
        order = tuple(letters) if letters is not None else tuple(seen)
        try:
            rows = tuple(tuple(edges[(s, x)] for x in order)
                         for s in range(n))
        except KeyError as missing:
            raise InputError(f"missing transition {missing}") from None
        return DFA(order, rows, initial, accepting)


def export_dfa(machine: DFA, destination: Path):
    """Write *machine* to *destination* in the canonical text format"""
    Path(destination).write_text(machine.dumps())


def load_dfa(source: Path, letters: Sequence[str] | None = None) -> DFA:
    """Read a DFA written by :func:`export_dfa`"""
    return DFA.loads(Path(source).read_text(), letters)


def universal_dfa(letters: Sequence[str]) -> DFA:
    """The one-state machine accepting every word"""
    return DFA(tuple(letters), (tuple(0 for _ in letters),), 0,
               frozenset((0,)))
