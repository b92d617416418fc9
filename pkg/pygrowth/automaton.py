#!/usr/bin/env python
from __future__ import annotations
from dataclasses import dataclass, field, replace
from functools import cached_property
from math import isqrt
from typing import Mapping
import logging
import re
import warnings

from . import StateId, VertexId
from .alphabet import Alphabet, Word
from .ball import Ball, RestrictedDistanceTable, restricted_distances
from .dfa import DFA
from .errors import InputError, ParameterError, ResourceError
from .fellow import LANGUAGE_NOTE
from .subgroup import SubgroupOracle, subgroup_members

logger = logging.getLogger(__name__)

#: Name of the accept set holding every non-Fail state
GEODESICS = "geodesics"

_COSET = re.compile(r"^coset\((?P<name>[^()\s]+)\)$")


@dataclass(frozen=True)
class TypeState:
    """A state φ of the fftp automaton: an offset for every vertex of the
       K-ball, indexed by vertex id, or the fail state when *offsets* is
       :data:`None`."""

    offsets: tuple[int, ...] | None

    @property
    def is_fail(self) -> bool:
        return self.offsets is None

    def __getitem__(self, v: VertexId) -> int:
        if self.offsets is None:
            raise InputError("the fail state has no offsets")
        return self.offsets[v]


#: The absorbing fail state ϱ
FAIL = TypeState(None)


@dataclass(frozen=True, eq=False)
class TransitionTables:
    """Precomputed data for :func:`transition` at parameter *K*.

       ``sources[x]`` lists the pairs (a, x⁻¹a) of K-ball vertices, so the
       translated distance d^x(a, b) is ``distances(x⁻¹a, b)``.
    """

    K: int
    distances: RestrictedDistanceTable
    letter_vertices: Mapping[str, VertexId]
    sources: Mapping[str, tuple[tuple[VertexId, VertexId], ...]]

    @property
    def size(self) -> int:
        return self.distances.size


def transition_tables(ball: Ball, K: int) -> TransitionTables:
    """:raises InputError: If *K* < 1"""
    if K < 1:
        raise InputError(f"K must be at least 1, got {K}")
    distances = restricted_distances(ball, K)
    size = distances.size
    alphabet = ball.alphabet
    letter_vertices = {x: ball.id_of((x,)) for x in alphabet.order}
    sources = {}
    for x in alphabet.order:
        inverse = alphabet.inverse(x)
        pairs = []
        for a in range(size):
            shifted = ball.find((inverse,) + ball.words[a])
            if shifted is not None and shifted < size:
                pairs.append((a, shifted))
        sources[x] = tuple(pairs)
    return TransitionTables(K, distances, letter_vertices, sources)


def initial_state(ball: Ball, K: int) -> TypeState:
    """φ₀(u) = d(1, u) on the K-ball"""
    if ball.radius < K:
        raise ResourceError(f"initial state at K={K} needs radius ≥ {K}",
                            required=K)
    return TypeState(ball.dist[:ball.count_within(K)])


def transition(state: TypeState, letter: str,
               tables: TransitionTables) -> TypeState:
    """ψ(b) = min φ(a) + d_B(x⁻¹a, b) − 1 over K-ball vertices a with x⁻¹a
       in the K-ball; Fail unless φ(x) = 1.

       :raises ParameterError: If some ψ(b) leaves [−K, K]
    """
    if state.is_fail or state[tables.letter_vertices[letter]] != 1:
        return FAIL
    K = tables.K
    table = tables.distances.table
    offsets = state.offsets
    sources = tables.sources[letter]
    psi = []
    for b in range(tables.size):
        best = None
        for a, shifted in sources:
            d = table[shifted][b]
            if d is not None:
                value = offsets[a] + d - 1
                if best is None or value < best:
                    best = value
        if best is None or not -K <= best <= K:
            raise ParameterError(f"K={K} too small: offset {best} out of "
                                 f"range after letter '{letter}'")
        psi.append(best)
    return TypeState(tuple(psi))


@dataclass(frozen=True, eq=False)
class FftpAutomaton:
    """Deterministic, total automaton over :class:`TypeState` states.

       States are numbered in discovery order: breadth first from the
       initial state, letters in shortlex order, so ``words[s]`` is the
       shortlex-least word reaching *s*. ``transitions[s][i]`` is the
       target on ``alphabet.order[i]``.
    """

    K: int
    alphabet: Alphabet
    states: tuple[TypeState, ...]
    words: tuple[Word, ...]
    transitions: tuple[tuple[StateId, ...], ...]
    fail: StateId | None
    M: int = 0
    core: int = 1  #: number of M-ball vertices; their offsets form the type
    semantics: StateSemantics | None = None

    #: K-ball vertex id of each letter
    letter_vertices: Mapping[str, VertexId] = field(default_factory=dict)

    #: named accept sets; see :func:`accepting_states`
    accept: Mapping[str, frozenset[StateId]] = field(default_factory=dict)

    #: K-ball members of each subgroup with a coset accept set
    members: Mapping[str, frozenset[VertexId]] = field(default_factory=dict)

    initial: StateId = 0

    def __len__(self) -> int:
        return len(self.states)

    @cached_property
    def _slot(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.alphabet.order)}

    @property
    def live(self) -> tuple[StateId, ...]:
        """Every state but Fail"""
        return tuple(s for s in range(len(self)) if s != self.fail)

    def step(self, state: StateId, letter: str) -> StateId:
        return self.transitions[state][self._slot[letter]]

    def run(self, word: Word) -> StateId:
        state = self.initial
        for letter in self.alphabet.check(word):
            state = self.step(state, letter)
        return state

    def state_of(self, word: Word) -> TypeState:
        return self.states[self.run(word)]

    def type_of(self, state: StateId) -> tuple[int, ...]:
        """Offsets of *state* on the M-ball. States reached by geodesics
           to the same vertex agree here, though they may differ further
           out in the K-ball.

           :raises InputError: For the fail state
        """
        if state == self.fail:
            raise InputError("the fail state has no type")
        return self.states[state].offsets[:self.core]

    def accepting(self, name: str) -> frozenset[StateId]:
        try:
            return self.accept[name]
        except KeyError:
            raise InputError(f"no accept set named '{name}'") from None

    def with_accept(self, name: str, states: frozenset[StateId],
                    members: frozenset[VertexId] | None = None
                    ) -> FftpAutomaton:
        """Copy with one more named accept set"""
        extra = {} if members is None else {name: members}
        return replace(self, accept={**self.accept, name: states},
                       members={**self.members, **extra})

    def to_dfa(self, name: str = GEODESICS) -> DFA:
        return DFA(self.alphabet.order, self.transitions, self.initial,
                   self.accepting(name))


@dataclass(frozen=True)
class StateSemantics:
    """Outcome of checking φ_w(u) = d(1, wu) − d(1, w) on the M-ball, and
       φ_w = Fail for non-geodesic w, over every word of length ≤ *length*.

       Words reaching the same (state, vertex) pair are checked once.
    """

    M: int
    length: int
    geodesic: int = 0      #: (state, vertex) pairs of geodesic words
    non_geodesic: int = 0  #: non-geodesic one-letter extensions checked
    witness: Word | None = None
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.witness is None

    def __bool__(self) -> bool:
        return self.passed

    def format(self, alphabet: Alphabet) -> str:
        text = f"M={self.M}, words ≤ {self.length}: {self.geodesic} " \
               f"geodesic classes, {self.non_geodesic} non-geodesic " \
               "extensions"
        if self.witness is not None:
            text += f"; '{alphabet.format(self.witness) or 'ε'}' " \
                    f"{self.reason}"
        return text


def check_state_semantics(states: list[TypeState] | tuple[TypeState, ...],
                          rows: list[tuple[StateId, ...]]
                          | tuple[tuple[StateId, ...], ...],
                          ball: Ball, K: int, M: int,
                          max_len: int | None = None) -> StateSemantics:
    """Walk every word of length ≤ min(radius − K, *max_len*) through the
       transitions *rows* alongside the ball, checking each target state
       against ball distances."""
    length = ball.radius - K
    if max_len is not None:
        length = min(length, max_len)
    alphabet = ball.alphabet
    core = ball.count_within(M)
    dist, neighbor, follow = ball.dist, ball.neighbor, ball.follow
    core_words = ball.words[:core]
    geodesic = non_geodesic = 0
    seen = {(0, 0)}
    stack: list[tuple[StateId, VertexId, Word]] = [(0, 0, ())]

    def failed(word: Word, reason: str) -> StateSemantics:
        return StateSemantics(M, length, geodesic, non_geodesic, word, reason)

    while stack:
        s, v, word = stack.pop()
        if len(word) >= length:
            continue
        for i, letter in enumerate(alphabet.order):
            target = rows[s][i]
            u = neighbor(v, letter)
            extended = word + (letter,)
            if dist[u] != len(extended):
                non_geodesic += 1
                if not states[target].is_fail:
                    return failed(extended, "is not geodesic but reaches "
                                            "a live state")
                continue
            if (target, u) in seen:
                continue
            seen.add((target, u))
            geodesic += 1
            state = states[target]
            if state.is_fail:
                return failed(extended, "is geodesic but reaches Fail")
            base = dist[u]
            for c, z in enumerate(core_words):
                if state.offsets[c] != dist[follow(u, z)] - base:
                    return failed(extended, "disagrees with ball distances "
                                  f"at '{alphabet.format(z) or 'ε'}'")
            stack.append((target, u, extended))
    return StateSemantics(M, length, geodesic, non_geodesic)


def build_automaton(ball: Ball, K: int, M: int | None = None,
                    strict: bool = True,
                    max_len: int | None = None) -> FftpAutomaton:
    """Close {φ₀} under :func:`transition`, then check the states of all
       words of length ≤ radius − K (or *max_len*) with
       :func:`check_state_semantics` on the M-ball.

       :param M: Fellow constant; defaults to ⌊√K⌋ following K = M²
       :param strict: Raise on a failed check instead of recording it

       :raises ResourceError: If ``ball.radius < 2K + 2``
       :raises InputError: If *M* is outside [0, K]
       :raises ParameterError: If *K* is too small for the group and
                               *strict* is set
    """
    if ball.radius < 2 * K + 2:
        raise ResourceError(f"build_automaton at K={K} needs radius ≥ "
                            f"{2 * K + 2}", required=2 * K + 2)
    M = isqrt(K) if M is None else M
    if not 0 <= M <= K:
        raise InputError(f"M={M} must lie in [0, K={K}]")
    tables = transition_tables(ball, K)
    start = initial_state(ball, K)
    states = [start]
    words: list[Word] = [()]
    number = {start: 0}
    rows = []
    s = 0
    while s < len(states):
        row = []
        for letter in ball.alphabet.order:
            target = transition(states[s], letter, tables)
            if target not in number:
                number[target] = len(states)
                states.append(target)
                words.append(words[s] + (letter,))
            row.append(number[target])
        rows.append(tuple(row))
        s += 1
    semantics = check_state_semantics(states, rows, ball, K, M, max_len)
    if strict and not semantics:
        raise ParameterError(f"K={K} too small: " +
                             semantics.format(ball.alphabet))
    fail = number.get(FAIL)
    logger.info("fftp automaton at K=%d: %d states; %s", K, len(states),
                semantics.format(ball.alphabet))
    live = frozenset(s for s in range(len(states)) if s != fail)
    return FftpAutomaton(K, ball.alphabet, tuple(states), tuple(words),
                         tuple(rows), fail, M, ball.count_within(M),
                         semantics, dict(tables.letter_vertices),
                         {GEODESICS: live})


def accepting_states(aut: FftpAutomaton, ball: Ball, spec: str,
                     subgroups: Mapping[str, SubgroupOracle] | None = None
                     ) -> FftpAutomaton:
    """Register the accept set named *spec* and return the extended
       automaton.

       ``geodesics`` is every non-Fail state. ``coset(NAME)`` keeps the
       non-Fail states whose offsets are ≥ 0 at every K-ball member of
       the subgroup NAME.

       :raises InputError: On an unknown set or subgroup name
    """
    if spec == GEODESICS:
        return aut
    match = _COSET.match(spec.strip())
    if match is None:
        raise InputError(f"unknown accept set '{spec}'")
    name = match["name"]
    if subgroups is None or name not in subgroups:
        raise InputError(f"unknown subgroup '{name}'")
    size = ball.count_within(aut.K)
    members = frozenset(u for u in subgroup_members(ball, subgroups[name])
                        if u < size)
    accepted = frozenset(
        s for s in aut.live
        if all(aut.states[s][u] >= 0 for u in members))
    logger.debug("%s: %d accepting states", spec, len(accepted))
    return aut.with_accept(coset_accept_name(subgroups[name]), accepted,
                           members)


def coset_accept_name(H: SubgroupOracle) -> str:
    return f"coset({H.name})"


def intersect_language(aut: FftpAutomaton | DFA, dfa: DFA,
                       accept: str = GEODESICS) -> DFA:
    """Product acceptor of *aut*'s *accept* set and a user path language.

       :raises InputError: If the alphabets differ
    """
    machine = aut.to_dfa(accept) if isinstance(aut, FftpAutomaton) else aut
    warnings.warn(LANGUAGE_NOTE, RuntimeWarning, stacklevel=2)
    return machine.product(dfa)


@dataclass(frozen=True)
class ConeTypeDigraph:
    """Minimal acceptor of the geodesic language; its live states are the
       cone types reachable from the identity."""

    dfa: DFA
    class_of: Mapping[StateId, StateId]  #: automaton state → minimal state
    live: frozenset[StateId]

    @property
    def cone_types(self) -> int:
        return len(self.live)


def cone_type_quotient(aut: FftpAutomaton) -> ConeTypeDigraph:
    minimal, class_of = aut.to_dfa(GEODESICS).minimize()
    live = minimal.live_states()
    logger.info("%d cone types from %d automaton states", len(live),
                len(aut.live))
    return ConeTypeDigraph(minimal, class_of, live)
