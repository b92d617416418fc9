#!/usr/bin/env python
from __future__ import annotations
from enum import Enum
import logging

from . import VertexId
from .alphabet import Word, invert_word
from .automaton import FftpAutomaton, accepting_states, coset_accept_name
from .ball import Ball
from .dfa import DFA
from .errors import ParameterError, ResourceError
from .subgroup import SubgroupOracle, subgroup_elements, subgroup_members

logger = logging.getLogger(__name__)


class Tag(Enum):
    """How a competitor word compares with the word read so far"""

    SMALLER = "smaller"
    EQUAL = "equal"


Competitor = tuple[VertexId, Tag]
TransversalState = tuple[int, frozenset[Competitor]]


def _left_inverse_table(ball: Ball, size: int) -> dict[str, list[VertexId | None]]:
    """``table[y][g]`` is y⁻¹g for g in the first *size* vertices"""
    alphabet = ball.alphabet
    table = {}
    for y in alphabet.order:
        inverse = (alphabet.inverse(y),)
        table[y] = [ball.find(inverse + ball.words[g]) for g in range(size)]
    return table


def shortlex_coset_minima(ball: Ball, H: SubgroupOracle,
                          max_len: int) -> list[Word]:
    """Brute-force shortlex-least representatives of the left cosets wH
       whose minimum has length ≤ *max_len*, in shortlex order"""
    rs = ball.rewriting
    key = ball.alphabet.sort_key
    members = subgroup_elements(rs, H, 2 * max_len)
    minima = []
    for v, word, d in ball.items():
        if d > max_len:
            break
        own = key(word)
        if all(key(rs.extend(word, h)) >= own for h in members
               if len(h) <= 2 * d):
            minima.append(word)
    return minima


def shortlex_transversal_acceptor(aut: FftpAutomaton, ball: Ball,
                                  H: SubgroupOracle, ft_const: int,
                                  check_len: int = 6) -> DFA:
    """Acceptor of the shortlex-least coset geodesics, one word per left
       coset wH.

       A state pairs a coset-geodesic automaton state with the set of word
       differences w′⁻¹w, for competitors w′ of the same length, that stay
       inside the *ft_const*-ball, each tagged by whether w′ is already
       smaller than w. A word is rejected when a smaller competitor ends
       in H. The result is minimized and compared with brute-force coset
       minima up to *check_len*.

       :raises ResourceError: If the ball is too small for *ft_const*
       :raises ParameterError: If *ft_const* is too small for the
                               competitors to be tracked faithfully
    """
    if ball.radius < ft_const + 1:
        raise ResourceError(f"transversal at ft={ft_const} needs radius ≥ "
                            f"{ft_const + 1}", required=ft_const + 1)
    name = coset_accept_name(H)
    if name not in aut.accept:
        aut = accepting_states(aut, ball, name, {H.name: H})
    coset_accept = aut.accepting(name)
    size = ball.count_within(ft_const)
    members = frozenset(u for u in subgroup_members(ball, H) if u < size)
    left = _left_inverse_table(ball, ball.count_within(ft_const + 1))
    order = ball.alphabet.order
    rank = {x: i for i, x in enumerate(order)}

    inverse = [ball.find(invert_word(ball.alphabet, ball.words[g]))
               for g in range(size)]
    typed = ball.count_within(aut.K)

    def step(state: TransversalState, x: str) -> TransversalState:
        s, competitors = state
        s = aut.step(s, x)
        if s == aut.fail:
            return s, frozenset()
        offsets = aut.states[s]
        moved: set[Competitor] = set()
        for g, tag in competitors:
            gx = ball.neighbor(g, x)
            for y in order:
                if tag is Tag.EQUAL and rank[y] > rank[x]:
                    continue
                target = left[y][gx]
                if target is None or target >= size:
                    continue
                # a competitor w′ = w·g⁻¹ that stopped being geodesic can
                # never end as a coset geodesic
                back = inverse[target]
                if back < typed and offsets[back] != 0:
                    continue
                smaller = tag is Tag.SMALLER or rank[y] < rank[x]
                moved.add((target, Tag.SMALLER if smaller else Tag.EQUAL))
        return s, frozenset(moved)

    def accepts(state: TransversalState) -> bool:
        s, competitors = state
        return s in coset_accept and not any(
            tag is Tag.SMALLER and g in members for g, tag in competitors)

    start: TransversalState = (aut.initial, frozenset({(0, Tag.EQUAL)}))
    states = [start]
    number = {start: 0}
    rows = []
    i = 0
    while i < len(states):
        row = []
        for x in order:
            target = step(states[i], x)
            if target not in number:
                number[target] = len(states)
                states.append(target)
            row.append(number[target])
        rows.append(tuple(row))
        i += 1
    logger.info("transversal for %s: %d raw states", H.name, len(states))
    machine = DFA(order, tuple(rows), 0,
                  frozenset(k for k, st in enumerate(states) if accepts(st)))
    machine, _ = machine.minimize()

    check_len = min(check_len, ball.radius - 1)
    expected = shortlex_coset_minima(ball, H, check_len)
    if list(machine.accepted_words(check_len)) != expected:
        raise ParameterError(f"ft_const={ft_const} too small for subgroup "
                             f"{H.name}")
    return machine
