#!/usr/bin/env python
from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterable

from . import VertexId
from .alphabet import Word, invert_word
from .ball import Ball
from .errors import InputError, ParameterError, ResourceError
from .rewriting import RewritingSystem


class Membership(Enum):
    """How subgroup membership is decided"""

    #: h ∈ H iff the normal form of h only uses the declared letters
    PARABOLIC = "parabolic"

    #: breadth-first products of the generators, bounded by a depth
    ENUMERATE = "enumerate"


@dataclass(frozen=True)
class SubgroupOracle:
    """A finitely generated subgroup H ≤ G and a membership strategy.

       For :attr:`Membership.ENUMERATE`, members are the elements reached
       from the identity by multiplying generators (and their inverses)
       without ever exceeding normal-form length *depth*.
    """

    name: str
    generators: tuple[Word, ...]
    strategy: Membership
    letters: frozenset[str] = frozenset()  #: declared parabolic letters
    depth: int = 0                         #: enumeration depth

    def validate(self, rs: RewritingSystem, depth: int = 4):
        """Check the strategy against *rs*.

           For a parabolic strategy, the declared letters must be closed
           under inversion and every product of at most *depth* generators
           must normalize to a word over those letters.

           :raises InputError: If the check fails
        """
        alphabet = rs.alphabet
        for generator in self.generators:
            alphabet.check(generator)
        if self.strategy is not Membership.PARABOLIC:
            return
        for letter in self.letters:
            if alphabet.inverse(letter) not in self.letters:
                raise InputError(f"subgroup {self.name}: parabolic letters "
                                 f"not closed under inversion at '{letter}'")
        steps = _steps(rs, self.generators)
        for length in range(1, depth + 1):
            for factors in product(steps, repeat=length):
                normal = rs.normalize(sum(factors, ()))
                if not set(normal) <= self.letters:
                    raise InputError(
                        f"subgroup {self.name}: member "
                        f"'{alphabet.format(normal)}' leaves the parabolic "
                        "letters")

    def contains(self, rs: RewritingSystem, word: Word) -> bool:
        """Membership test for a parabolic subgroup"""
        if self.strategy is not Membership.PARABOLIC:
            raise InputError(f"subgroup {self.name} has no direct "
                             "membership test")
        return set(rs.normalize(word)) <= self.letters


def trivial_subgroup(name: str = "trivial") -> SubgroupOracle:
    return SubgroupOracle(name, (), Membership.PARABOLIC)


def _steps(rs: RewritingSystem, generators: Iterable[Word]) -> list[Word]:
    steps: list[Word] = []
    for generator in generators:
        for step in (generator, invert_word(rs.alphabet, generator)):
            if step not in steps:
                steps.append(step)
    return steps


def subgroup_elements(rs: RewritingSystem, H: SubgroupOracle,
                      max_len: int) -> list[Word]:
    """Normal forms of the members of *H* of length ≤ *max_len*, in
       shortlex order.

       Parabolic subgroups are listed exactly by enumerating irreducible
       words over the declared letters. Otherwise the generators are
       multiplied breadth-first without exceeding *max_len*.
    """
    found: set[Word] = {()}
    if H.strategy is Membership.PARABOLIC:
        layer: list[Word] = [()]
        letters = [x for x in rs.alphabet.order if x in H.letters]
        for _ in range(max_len):
            following = []
            for word in layer:
                for letter in letters:
                    candidate = rs.extend(word, (letter,))
                    if len(candidate) == len(word) + 1 \
                            and set(candidate) <= H.letters \
                            and candidate not in found:
                        found.add(candidate)
                        following.append(candidate)
            layer = following
    else:
        steps = _steps(rs, H.generators)
        queue = [()]
        while queue:
            word = queue.pop()
            for step in steps:
                candidate = rs.extend(word, step)
                if len(candidate) <= max_len and candidate not in found:
                    found.add(candidate)
                    queue.append(candidate)
    return sorted(found, key=rs.alphabet.sort_key)


def subgroup_members(ball: Ball, H: SubgroupOracle) -> frozenset[VertexId]:
    """Vertex ids of the ball lying in *H*.

       :raises ResourceError: If an enumerate strategy's depth is below
                              twice the ball radius; the required depth is
                              attached
    """
    if H.strategy is Membership.PARABOLIC:
        return frozenset(v for v, word, _ in ball.items()
                         if set(word) <= H.letters)
    required = 2 * ball.radius
    if H.depth < required:
        raise ResourceError(f"subgroup {H.name}: enumerate depth "
                            f"≥ {required} required", required=required)
    members = subgroup_elements(ball.rewriting, H, H.depth)
    return frozenset(ball.index[w] for w in members if w in ball.index)


@dataclass(frozen=True)
class Projection:
    """Closest-point projection of a vertex onto a subgroup"""

    distance: int                  #: d(v, H)
    members: frozenset[VertexId]   #: π_H(v)


def projection_set(ball: Ball, members: frozenset[VertexId],
                   v: VertexId) -> Projection:
    """Closest-point projection of *v* onto the subgroup whose in-ball
       members are *members*.

       Searches breadth-first from *v* for at most radius − d(1, v) steps.
       Every geodesic that short stays inside the ball, so the first layer
       meeting *members* is the exact projection set.

       :raises ResourceError: If no member is found within that range
    """
    budget = ball.radius - ball.dist[v]
    if v in members:
        return Projection(0, frozenset((v,)))
    seen = {v}
    layer = [v]
    for d in range(1, budget + 1):
        following = []
        for u in layer:
            for w in ball.adjacency[u]:
                if w is not None and w not in seen:
                    seen.add(w)
                    following.append(w)
        hits = frozenset(u for u in following if u in members)
        if hits:
            return Projection(d, hits)
        layer = following
    raise ResourceError(
        f"cannot certify the projection of "
        f"'{ball.alphabet.format(ball.words[v])}': radius > "
        f"{ball.radius} required", required=ball.radius + 1)


@dataclass(frozen=True)
class FiniteSubgraph:
    """A finite vertex set Z containing the identity.

       *orbit* is the orbit of the identity under the setwise stabilizer
       G_Z = {g | gZ = Z}.
    """

    name: str
    vertices: tuple[Word, ...]  #: normal forms, shortlex-sorted
    diameter: int
    orbit: tuple[Word, ...]

    @property
    def orbit_size(self) -> int:
        return len(self.orbit)

    def require_diameter(self, K: int):
        """:raises ParameterError: If diam(Z) > *K*"""
        if self.diameter > K:
            raise ParameterError(f"subgraph {self.name} has diameter "
                                 f"{self.diameter} > K={K}")


def load_subgraph(ball: Ball, words: Iterable[Word],
                  name: str = "Z") -> FiniteSubgraph:
    """Normalize *words* into a :class:`FiniteSubgraph`.

       Since g·1 = g, any g with gZ = Z lies in Z, so the stabilizer orbit
       is found by testing the translates by members of Z.

       :raises InputError: If the identity is missing or a word lies
                           outside *ball*
    """
    rs = ball.rewriting
    vertices = sorted({rs.normalize(ball.alphabet.check(w)) for w in words},
                      key=ball.alphabet.sort_key)
    if () not in vertices:
        raise InputError(f"subgraph {name} must contain the identity")
    for word in vertices:
        ball.id_of(word)
    ids = [ball.index[w] for w in vertices]
    diameter = max(ball.distance(u, v) for u in ids for v in ids)
    members = set(vertices)
    orbit = tuple(g for g in vertices
                  if {rs.extend(g, z) for z in vertices} == members)
    return FiniteSubgraph(name, tuple(vertices), diameter, orbit)
