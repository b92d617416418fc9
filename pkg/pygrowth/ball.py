#!/usr/bin/env python
from __future__ import annotations
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterator
import logging

from . import VertexId
from .alphabet import Word, invert_word
from .errors import InputError, ResourceError
from .rewriting import RewritingSystem, require_confluent

logger = logging.getLogger(__name__)

#: Adjacency marker for a neighbor beyond the ball's radius
OUTSIDE = None


@dataclass(frozen=True, eq=False)
class Ball:
    """The ball of radius *radius* about the identity in the Cayley graph
       Γ(G, X) of the group presented by a confluent rewriting system.

       Vertices are normal forms with dense ids assigned in BFS order
       (layer by layer, letters in alphabet order), so the vertices within
       distance ``r`` are exactly the ids ``range(self.count_within(r))``.
    """

    rewriting: RewritingSystem
    radius: int
    words: tuple[Word, ...]     #: normal form of each vertex id
    dist: tuple[int, ...]       #: distance of each vertex from the identity

    #: ``adjacency[v][i]`` is the neighbor of *v* by ``letters[i]``, or
    #: :data:`OUTSIDE`
    adjacency: tuple[tuple[VertexId | None, ...], ...]

    _layers: tuple[int, ...] = field(repr=False)

    @property
    def alphabet(self):
        return self.rewriting.alphabet

    @cached_property
    def index(self) -> dict[Word, VertexId]:
        """Normal form → vertex id"""
        return {word: v for v, word in enumerate(self.words)}

    @cached_property
    def _letter_slot(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.alphabet.letters)}

    def __len__(self) -> int:
        return len(self.words)

    def count_within(self, r: int) -> int:
        """Number of vertices at distance ≤ *r* (capped at the radius)"""
        if r < 0:
            return 0
        return self._layers[min(r, self.radius)]

    def sphere_sizes(self) -> list[int]:
        """Vertex counts at distance 0, 1, ..., radius"""
        return [b - a for a, b in zip((0,) + self._layers, self._layers)]

    def ball_sizes(self) -> list[int]:
        """Vertex counts at distance ≤ 0, 1, ..., radius"""
        return list(self._layers)

    def id_of(self, word: Word) -> VertexId:
        """Vertex id of the element represented by *word*

           :raises InputError: If the element lies outside the ball
        """
        normal = self.rewriting.normalize(self.alphabet.check(word))
        try:
            return self.index[normal]
        except KeyError:
            raise InputError(
                f"'{self.alphabet.format(normal)}' lies outside the ball "
                f"of radius {self.radius}") from None

    def find(self, word: Word) -> VertexId | None:
        """Like :meth:`id_of` but :data:`OUTSIDE` instead of raising"""
        return self.index.get(self.rewriting.normalize(word))

    def neighbor(self, v: VertexId, letter: str) -> VertexId | None:
        return self.adjacency[v][self._letter_slot[letter]]

    def follow(self, v: VertexId, word: Word) -> VertexId | None:
        """Walk *word* from *v* along ball edges; :data:`OUTSIDE` if the
           walk leaves the ball"""
        slots = self._letter_slot
        for letter in word:
            v = self.adjacency[v][slots[letter]]
            if v is None:
                return None
        return v

    def path(self, word: Word, start: VertexId = 0) -> list[VertexId]:
        """Vertex sequence of the path labelled *word* from *start*

           :raises InputError: If the path leaves the ball
        """
        vertices = [start]
        for letter in word:
            nxt = self.neighbor(vertices[-1], letter)
            if nxt is None:
                raise InputError(f"path '{self.alphabet.format(word)}' "
                                 f"leaves the ball of radius {self.radius}")
            vertices.append(nxt)
        return vertices

    def difference(self, u: VertexId, v: VertexId) -> Word:
        """Normal form of u⁻¹v"""
        inverse = invert_word(self.alphabet, self.words[u])
        return self.rewriting.normalize(inverse + self.words[v])

    def distance(self, u: VertexId, v: VertexId) -> int:
        """Graph distance d(u, v), exact even if a geodesic leaves the ball:
           the normal form of u⁻¹v is shortlex-least, hence geodesic"""
        if u == v:
            return 0
        return len(self.difference(u, v))

    def bfs(self, source: VertexId, depth: int | None = None,
            within: int | None = None) -> dict[VertexId, int]:
        """Breadth-first distances from *source* along ball edges.

           :param depth: Stop expanding beyond this distance
           :param within: Only visit vertices at distance ≤ *within* from
                          the identity (the induced subgraph on that ball)
        """
        limit = self.count_within(within) if within is not None else len(self)
        seen = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            d = seen[v]
            if depth is not None and d >= depth:
                continue
            for u in self.adjacency[v]:
                if u is not None and u < limit and u not in seen:
                    seen[u] = d + 1
                    queue.append(u)
        return seen

    def items(self) -> Iterator[tuple[VertexId, Word, int]]:
        for v, (word, d) in enumerate(zip(self.words, self.dist)):
            yield v, word, d

    def dump(self, path: Path):
        """Write the canonical text artifact: a ``radius R`` header, one
           ``id<TAB>normalform<TAB>dist`` line per vertex, then one
           ``id<TAB>letter<TAB>id|*`` line per (vertex, letter)."""
        fmt = self.alphabet.format
        lines = [f"radius {self.radius}"]
        lines += [f"{v}\t{fmt(w)}\t{d}" for v, w, d in self.items()]
        for v, row in enumerate(self.adjacency):
            for letter, u in zip(self.alphabet.letters, row):
                lines.append(f"{v}\t{letter}\t{'*' if u is None else u}")
        Path(path).write_text("\n".join(lines) + "\n")

    @staticmethod
    def load(path: Path, rewriting: RewritingSystem) -> Ball:
        """Read a ball written by :meth:`dump`.

           :raises InputError: On a malformed file
        """
        alphabet = rewriting.alphabet
        lines = Path(path).read_text().splitlines()
        if not lines or not lines[0].startswith("radius "):
            raise InputError(f"{path}: missing 'radius' header")
        radius = int(lines[0].split()[1])
        words: list[Word] = []
        dist: list[int] = []
        slots = {x: i for i, x in enumerate(alphabet.letters)}
        rows: list[list[VertexId | None]] = []
        vertex_section = True
        for number, line in enumerate(lines[1:], start=2):
            cells = line.split("\t")
            if len(cells) != 3:
                raise InputError(f"{path}:{number}: expected three fields")
            # vertex ids run 0, 1, 2, ...; adjacency restarts at 0
            if vertex_section and int(cells[0]) != len(words):
                vertex_section = False
            if vertex_section:
                words.append(alphabet.parse(cells[1]))
                dist.append(int(cells[2]))
                continue
            if cells[1] not in slots:
                raise InputError(f"{path}:{number}: unknown letter "
                                 f"'{cells[1]}'")
            v = int(cells[0])
            while len(rows) <= v:
                rows.append([None] * len(slots))
            rows[v][slots[cells[1]]] = None if cells[2] == "*" \
                else int(cells[2])
        return _assemble(rewriting, radius, words, dist, rows)

    def restricted_distances(self, K: int) -> RestrictedDistanceTable:
        """Shortcut for :func:`restricted_distances`"""
        return restricted_distances(self, K)


def _assemble(rewriting: RewritingSystem, radius: int, words: list[Word],
              dist: list[int], rows: list[list[VertexId | None]]) -> Ball:
    layers = [0] * (radius + 1)
    for d in dist:
        if d <= radius:
            layers[d] += 1
    for r in range(1, radius + 1):
        layers[r] += layers[r - 1]
    while len(rows) < len(words):
        rows.append([None] * len(rewriting.alphabet.letters))
    return Ball(rewriting, radius, tuple(words), tuple(dist),
                tuple(tuple(row) for row in rows), tuple(layers))


def build_ball(rs: RewritingSystem, R: int,
               max_vertices: int | None = None) -> Ball:
    """Breadth-first construction of the radius-*R* ball of Γ(G, X).

       :param rs: A confluent rewriting system (checked if not flagged)
       :param R: Radius
       :param max_vertices: Vertex budget

       :raises ResourceError: If the ball would exceed *max_vertices*;
                              partial statistics are attached
    """
    rs = require_confluent(rs)
    letters = rs.alphabet.letters
    identity: Word = ()
    words: list[Word] = [identity]
    dist: list[int] = [0]
    index: dict[Word, VertexId] = {identity: 0}
    rows: list[list[VertexId | None]] = []
    frontier = [0]
    for layer in range(R + 1):
        following: list[VertexId] = []
        for v in frontier:
            row: list[VertexId | None] = []
            for letter in letters:
                word = rs.extend(words[v], (letter,))
                u = index.get(word)
                if u is None and layer < R:
                    u = len(words)
                    if max_vertices is not None and u >= max_vertices:
                        raise ResourceError(
                            f"ball of radius {R} exceeds {max_vertices} "
                            "vertices",
                            stats={"vertices": u, "radius_reached": layer})
                    index[word] = u
                    words.append(word)
                    dist.append(layer + 1)
                    following.append(u)
                row.append(u)
            rows.append(row)
        logger.debug("ball layer %d: %d vertices", layer, len(frontier))
        frontier = following
    logger.info("built ball of radius %d with %d vertices", R, len(words))
    ball = _assemble(rs, R, words, dist, rows)
    ball.__dict__["index"] = index
    return ball


@dataclass(frozen=True, eq=False)
class RestrictedDistanceTable:
    """All-pairs distances inside the subgraph induced on the K-ball.

       ``table[u][v]`` is :data:`None` where *v* is unreachable from *u*
       without leaving the K-ball.
    """

    K: int
    table: tuple[tuple[int | None, ...], ...]

    @property
    def size(self) -> int:
        """Number of vertices in the K-ball"""
        return len(self.table)

    def __call__(self, u: VertexId, v: VertexId) -> int | None:
        return self.table[u][v]


def restricted_distances(ball: Ball, K: int) -> RestrictedDistanceTable:
    """Breadth-first search from every K-ball vertex, never leaving the
       K-ball.

       :raises ResourceError: If *K* exceeds the ball radius
    """
    if K > ball.radius:
        raise ResourceError(f"K={K} exceeds ball radius {ball.radius}",
                            required=K)
    size = ball.count_within(K)
    rows = []
    for u in range(size):
        reached = ball.bfs(u, within=K)
        rows.append(tuple(reached.get(v) for v in range(size)))
    return RestrictedDistanceTable(K, tuple(rows))
