#!/usr/bin/env python
from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import accumulate, takewhile
from typing import Callable, Sequence
import logging

from . import StateId
from .alphabet import Word
from .automaton import FftpAutomaton, coset_accept_name
from .ball import Ball
from .errors import InputError, InvariantError, OracleMismatch, ResourceError
from .series import RationalSeries, series_from_sequence
from .subgroup import FiniteSubgraph, SubgroupOracle, subgroup_elements

logger = logging.getLogger(__name__)

#: Weight of each automaton state in a sphere count
Weight = Callable[[StateId], Fraction]


class SeriesKind(Enum):
    SPHERE = "sphere"
    BALL = "ball"


class CountKind(Enum):
    """What :func:`brute_force_counts` counts"""

    SPHERE = "sphere"
    BALL = "ball"
    GEODESIC = "geodesic"  #: geodesic words of each exact length
    COSET = "coset"        #: left cosets wH at each distance
    EMBED = "embed"        #: translates of Z inside each ball


def parent_count(aut: FftpAutomaton, state: StateId) -> int:
    """Number of letters x with φ(x) = −1, i.e. edges entering the vertex
       from the previous sphere

       :raises InputError: For the fail state
    """
    if state == aut.fail:
        raise InputError("the fail state has no parents")
    phi = aut.states[state]
    return sum(1 for x in aut.alphabet.order
               if phi[aut.letter_vertices[x]] == -1)


@dataclass(frozen=True, eq=False)
class TransitionMatrices:
    """Matrices over the live automaton states, indexed by position in
       *states*.

       ``counts[i][j]`` is the number of letters leading from state i to
       state j; ``weighted[i][j]`` divides it by the parent count of j, so
       u·Aⁿ carries the Markov combing weights of length-n geodesics.
    """

    states: tuple[StateId, ...]
    counts: tuple[tuple[int, ...], ...]
    weighted: tuple[tuple[Fraction, ...], ...]
    start: tuple[int, ...]
    parents: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.states)

    def iterate(self, n: int, weighted: bool = True) -> list[list[Fraction]]:
        """Row vectors u, uA, ..., uA^(n−1)"""
        matrix = self.weighted if weighted else self.counts
        size = len(self)
        vector = [Fraction(x) for x in self.start]
        out = []
        for _ in range(n):
            out.append(vector)
            following = [Fraction(0)] * size
            for i, value in enumerate(vector):
                if value:
                    for j, entry in enumerate(matrix[i]):
                        if entry:
                            following[j] += value * entry
            vector = following
        return out


def transition_matrices(aut: FftpAutomaton) -> TransitionMatrices:
    """:raises InvariantError: If a non-initial live state has no parent"""
    states = aut.live
    position = {s: i for i, s in enumerate(states)}
    parents = tuple(parent_count(aut, s) for s in states)
    for s, p in zip(states, parents):
        if p == 0 and s != aut.initial:
            raise InvariantError(f"state {s} has no parent")
    counts = [[0] * len(states) for _ in states]
    for i, s in enumerate(states):
        for target in aut.transitions[s]:
            if target != aut.fail:
                counts[i][position[target]] += 1
    weighted = tuple(
        tuple(Fraction(c, parents[j]) if c else Fraction(0)
              for j, c in enumerate(row)) for row in counts)
    start = tuple(int(s == aut.initial) for s in states)
    return TransitionMatrices(states, tuple(tuple(r) for r in counts),
                              weighted, start, parents)


@dataclass(frozen=True)
class CombingCheck:
    """Outcome of :func:`validate_combing`"""

    passed: bool
    vertices: int
    worst: Word | None = None
    total: Fraction = Fraction(1)  #: combing mass at *worst*

    def __bool__(self) -> bool:
        return self.passed


def validate_combing(aut: FftpAutomaton, ball: Ball, R: int) -> CombingCheck:
    """Sum the combing weights Π 1/parents of every geodesic word of
       length ≤ *R* by endpoint; each vertex must receive exactly 1.

       :raises ResourceError: If *R* exceeds the ball radius
    """
    if R > ball.radius:
        raise ResourceError(f"combing check at R={R} needs radius ≥ {R}",
                            required=R)
    rs = ball.rewriting
    mass: dict[Word, Fraction] = {(): Fraction(1)}
    layer = [((), aut.initial, Fraction(1))]
    for _ in range(R):
        following = []
        for normal, s, weight in layer:
            for x in aut.alphabet.order:
                target = aut.step(s, x)
                if target == aut.fail:
                    continue
                word = rs.extend(normal, (x,))
                share = weight / parent_count(aut, target)
                mass[word] = mass.get(word, Fraction(0)) + share
                following.append((word, target, share))
        layer = following
    worst, total = None, Fraction(1)
    for v in range(ball.count_within(R)):
        got = mass.get(ball.words[v], Fraction(0))
        if got != 1 and (worst is None or abs(got - 1) > abs(total - 1)):
            worst, total = ball.words[v], got
    return CombingCheck(worst is None, len(mass), worst, total)


@dataclass(frozen=True)
class SeriesPair:
    """A sphere-type series and its cumulative ball-type companion"""

    exact: RationalSeries
    cumulative: RationalSeries


def _verify(name: str, series: RationalSeries,
            oracle: Sequence[int] | None) -> RationalSeries:
    if oracle is None:
        return series
    actual = series.coefficients(len(oracle))
    if actual != [Fraction(x) for x in oracle]:
        raise OracleMismatch(name, list(oracle), actual)
    return series.with_prefix(oracle)


def _pair(name: str, exact: RationalSeries,
          oracle: Sequence[int] | None) -> SeriesPair:
    """Verify *exact* against *oracle* and its cumulative against the
       partial sums of *oracle*"""
    exact = _verify(name, exact, oracle)
    cumulative = exact.over_one_minus_t()
    if oracle is not None:
        cumulative = _verify(f"cumulative {name}", cumulative,
                             list(accumulate(oracle)))
    return SeriesPair(exact, cumulative)


def _sphere_terms(matrices: TransitionMatrices, weights: Sequence[Fraction],
                  n: int, weighted: bool = True) -> list[Fraction]:
    return [sum((v * w for v, w in zip(vector, weights)), Fraction(0))
            for vector in matrices.iterate(n, weighted)]


def _fit(terms: list[Fraction], order: int) -> RationalSeries:
    for k, value in enumerate(terms):
        if value.denominator != 1 or value < 0:
            raise InvariantError(f"coefficient {k} is {value}, not a "
                                 "nonnegative integer")
    return series_from_sequence(terms, order)


def sphere_or_ball_series(aut: FftpAutomaton, matrices: TransitionMatrices,
                          weight: Weight | None = None,
                          kind: SeriesKind = SeriesKind.SPHERE,
                          oracle: Sequence[int] | None = None
                          ) -> RationalSeries:
    """Σ_n (u·Aⁿ·weight) tⁿ, or its cumulative version for
       :attr:`SeriesKind.BALL`.

       :param oracle: Brute-force counts of the requested kind; when given
                      the result's prefix must match them
       :raises OracleMismatch: If the prefix disagrees with *oracle*
    """
    weight = weight or (lambda state: Fraction(1))
    weights = [Fraction(weight(s)) for s in matrices.states]
    order = len(matrices)
    terms = _sphere_terms(matrices, weights, 2 * order + 2)
    series = _fit(terms, order)
    if kind is SeriesKind.BALL:
        series = series.over_one_minus_t()
    return _verify(f"{kind.value} series", series, oracle)


def type_classes(aut: FftpAutomaton, matrices: TransitionMatrices
                 ) -> dict[tuple[int, ...], tuple[StateId, ...]]:
    """Live states grouped by their offsets on the M-ball"""
    classes: dict[tuple[int, ...], list[StateId]] = {}
    for s in matrices.states:
        classes.setdefault(aut.type_of(s), []).append(s)
    return {key: tuple(group) for key, group in classes.items()}


def type_series(aut: FftpAutomaton, matrices: TransitionMatrices,
                state: StateId) -> RationalSeries:
    """Sphere series counting the vertices whose type is the type of
       *state*: every live state with the same M-ball offsets counts"""
    if state not in matrices.states:
        raise InputError(f"state {state} is not a live state")
    key = aut.type_of(state)
    return sphere_or_ball_series(
        aut, matrices, lambda s: Fraction(int(aut.type_of(s) == key)))


def geodesic_series(aut: FftpAutomaton, matrices: TransitionMatrices,
                    oracle: Sequence[int] | None = None) -> SeriesPair:
    """Geodesic words of each exact length, and of length ≤ n"""
    order = len(matrices)
    terms = _sphere_terms(matrices, [Fraction(1)] * order, 2 * order + 2,
                          weighted=False)
    return _pair("geodesic series", _fit(terms, order), oracle)


def coset_weights(aut: FftpAutomaton, H: SubgroupOracle) -> Weight:
    """1/D(φ) on the coset accept set of *H*, where D(φ) counts the K-ball
       members of H with offset 0; 0 elsewhere"""
    name = coset_accept_name(H)
    accepted = aut.accepting(name)
    members = aut.members[name]

    def weight(state: StateId) -> Fraction:
        if state not in accepted:
            return Fraction(0)
        phi = aut.states[state]
        return Fraction(1, sum(1 for u in members if phi[u] == 0))
    return weight


def coset_growth_series(aut: FftpAutomaton, H: SubgroupOracle,
                        matrices: TransitionMatrices,
                        oracle: Sequence[int] | None = None) -> SeriesPair:
    """Sphere and ball series of the Schreier graph of left cosets wH.

       :param oracle: Brute-force coset sphere counts; the ball series is
                      checked against their partial sums
       :raises InvariantError: If a coefficient is not an integer
    """
    sphere = sphere_or_ball_series(aut, matrices, coset_weights(aut, H))
    return _pair(f"coset series of {H.name}", sphere, oracle)


def embedding_shift(aut: FftpAutomaton, ball: Ball, Z: FiniteSubgraph,
                    state: StateId) -> int:
    """c(φ) = max over z ∈ Z of φ(z)"""
    phi = aut.states[state]
    return max(phi[ball.index[z]] for z in Z.vertices)


def embedding_series(aut: FftpAutomaton, ball: Ball, Z: FiniteSubgraph,
                     matrices: TransitionMatrices,
                     oracle: Sequence[int] | None = None) -> RationalSeries:
    """e(n) = number of translates gZ inside the n-ball.

       A vertex v of type φ has vZ inside the n-ball iff d(1, v) + c(φ) ≤ n,
       so |O|·Σ e(n) tⁿ = Σ_φ t^c(φ) (type series of φ) / (1 − t), with O
       the orbit of the identity under the stabilizer of Z.

       :raises ParameterError: If diam(Z) > K
    """
    Z.require_diameter(aut.K)
    shifts = [embedding_shift(aut, ball, Z, s) for s in matrices.states]
    order = len(matrices) + aut.K + 1
    size = 2 * order + 2
    vectors = matrices.iterate(size)
    terms = [Fraction(0)] * size
    for n, vector in enumerate(vectors):
        for value, shift in zip(vector, shifts):
            if value and n + shift < size:
                terms[n + shift] += value
    series = _fit(terms, order).over_one_minus_t().scaled(
        Fraction(1, Z.orbit_size))
    return _verify(f"embedding series of {Z.name}", series, oracle)


def _require_radius(ball: Ball, n_max: int):
    if ball.radius < n_max:
        raise ResourceError(f"counts to n={n_max} need radius ≥ {n_max}",
                            required=n_max)


def _geodesic_counts(ball: Ball, n_max: int) -> list[int]:
    paths = [0] * ball.count_within(n_max)
    paths[0] = 1
    totals = [0] * (n_max + 1)
    totals[0] = 1
    for v in range(1, len(paths)):
        d = ball.dist[v]
        paths[v] = sum(paths[u] for u in ball.adjacency[v]
                       if u is not None and ball.dist[u] == d - 1)
        totals[d] += paths[v]
    return totals


def _coset_counts(ball: Ball, H: SubgroupOracle, n_max: int) -> list[int]:
    rs = ball.rewriting
    members = subgroup_elements(rs, H, 2 * n_max)
    totals = [Fraction(0)] * (n_max + 1)
    for v, word, d in ball.items():
        if d > n_max:
            break
        products: dict[Word, Word] = {(): word}
        closest = 0
        # members are sorted by length; |vh| ≤ |v| forces |h| ≤ 2|v|
        for h in takewhile(lambda h: len(h) <= 2 * d, members):
            head = products.get(h[:-1])
            product = rs.extend(head, h[-1:]) if head is not None \
                else rs.extend(word, h)
            products[h] = product
            if len(product) < d:
                break
            closest += len(product) == d
        else:
            totals[d] += Fraction(1, closest)
    counts = []
    for n, value in enumerate(totals):
        if value.denominator != 1:
            raise InvariantError(f"coset count {value} at n={n} is not an "
                                 "integer")
        counts.append(int(value))
    return counts


def _embedding_counts(ball: Ball, Z: FiniteSubgraph,
                      n_max: int) -> list[int]:
    rs = ball.rewriting
    starts = [0] * (n_max + 1)
    for v, word, d in ball.items():
        if d > n_max:
            break
        reach = max(len(rs.extend(word, z)) for z in Z.vertices)
        if reach <= n_max:
            starts[reach] += 1
    counts, running = [], 0
    for n, value in enumerate(starts):
        running += value
        if running % Z.orbit_size:
            raise InvariantError(f"{running} embeddings at n={n} not "
                                 f"divisible by orbit size {Z.orbit_size}")
        counts.append(running // Z.orbit_size)
    return counts


def brute_force_counts(ball: Ball, kind: CountKind, n_max: int,
                       subgroup: SubgroupOracle | None = None,
                       subgraph: FiniteSubgraph | None = None) -> list[int]:
    """Exact counts for n = 0..*n_max* by direct enumeration of the ball.

       :raises ResourceError: If the ball radius is below *n_max*
       :raises InputError: If *kind* needs a subgroup or subgraph that is
                           missing
    """
    _require_radius(ball, n_max)
    if kind is CountKind.SPHERE:
        return ball.sphere_sizes()[:n_max + 1]
    if kind is CountKind.BALL:
        return ball.ball_sizes()[:n_max + 1]
    if kind is CountKind.GEODESIC:
        return _geodesic_counts(ball, n_max)
    if kind is CountKind.COSET:
        if subgroup is None:
            raise InputError("coset counts need a subgroup")
        return _coset_counts(ball, subgroup, n_max)
    if subgraph is None:
        raise InputError("embedding counts need a subgraph")
    return _embedding_counts(ball, subgraph, n_max)
