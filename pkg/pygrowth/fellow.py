#!/usr/bin/env python
from __future__ import annotations
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Sequence
import logging

from . import VertexId
from .alphabet import Word
from .ball import Ball
from .errors import InputError, InvariantError, ResourceError
from .subgroup import SubgroupOracle, projection_set, subgroup_members

logger = logging.getLogger(__name__)

#: Induction note attached to every fftp report
ONE_EDGE_NOTE = ("only one-edge continuations wx of geodesics w were "
                 "checked; by induction on length this certifies fftp for "
                 "all paths of length ≤ R+1")

#: Flag attached where a path language is in play
LANGUAGE_NOTE = ("fellow travelers are not checked for membership in a "
                 "user-supplied path language")

Cell = tuple[int, int]


@dataclass(frozen=True)
class FellowTravel:
    """Answer of :func:`async_fellow_travel`.

       *staircase* is a monotone lattice path from (0, 0) to
       (ℓ(p), ℓ(q)) through cells (i, j) with d(p(i), q(j)) ≤ M; it is
       empty when the paths do not fellow travel.
    """

    verdict: bool
    staircase: tuple[Cell, ...] = ()

    def __bool__(self) -> bool:
        return self.verdict


def _check_path(ball: Ball, path: Sequence[VertexId], name: str):
    if not path:
        raise InputError(f"path {name} is empty")
    for v in path:
        if not 0 <= v < len(ball):
            raise InputError(f"path {name} leaves the ball at vertex {v}")
    for a, b in zip(path, path[1:]):
        if b not in ball.adjacency[a]:
            raise InputError(f"path {name}: vertices {a} and {b} are not "
                             "adjacent")


def async_fellow_travel(ball: Ball, p: Sequence[VertexId],
                        q: Sequence[VertexId], M: int) -> FellowTravel:
    """Decide whether *p* and *q* asynchronously *M*-fellow travel.

       A monotone reparametrization pair is the same thing as a staircase
       in the index grid with steps (1, 0), (0, 1) and (1, 1); this is a
       reachability search over that grid.

       :param ball: Ball containing both paths
       :param p: Vertex sequence of the first path
       :param q: Vertex sequence of the second path
       :param M: Distance bound

       :raises InputError: If a path is not a path in *ball*
    """
    _check_path(ball, p, "p")
    _check_path(ball, q, "q")
    cache: dict[Cell, bool] = {}

    def close(cell: Cell) -> bool:
        if cell not in cache:
            i, j = cell
            cache[cell] = ball.distance(p[i], q[j]) <= M
        return cache[cell]

    goal = (len(p) - 1, len(q) - 1)
    if not close((0, 0)):
        return FellowTravel(False)
    parent: dict[Cell, Cell | None] = {(0, 0): None}
    queue = deque([(0, 0)])
    while queue:
        cell = queue.popleft()
        if cell == goal:
            steps = []
            at: Cell | None = cell
            while at is not None:
                steps.append(at)
                at = parent[at]
            return FellowTravel(True, tuple(reversed(steps)))
        i, j = cell
        for nxt in ((i + 1, j), (i, j + 1), (i + 1, j + 1)):
            if nxt[0] <= goal[0] and nxt[1] <= goal[1] \
                    and nxt not in parent and close(nxt):
                parent[nxt] = cell
                queue.append(nxt)
    return FellowTravel(False)


def _has_shorter_fellow(ball: Ball, M: int, path: Sequence[VertexId]) -> bool:
    """Is there a path q from path[0] to path[-1], strictly shorter than
       *path*, asynchronously M-fellow traveling with it?

       0-1 breadth-first search over pairs (vertex of q, index into path),
       where advancing along *path* is free and every step of q costs 1.
    """
    n = len(path) - 1
    near = [ball.bfs(v, depth=M) for v in path]
    start = (path[0], 0)
    goal = (path[-1], n)
    cost = {start: 0}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        v, i = state
        c = cost[state]
        if state == goal:
            return c < n
        if i < n and v in near[i + 1] and cost.get((v, i + 1), c + 1) > c:
            cost[(v, i + 1)] = c
            queue.appendleft((v, i + 1))
        for u in ball.adjacency[v]:
            if u is None:
                continue
            for j in (i, i + 1):
                if j <= n and u in near[j] and cost.get((u, j), c + 2) > c + 1:
                    cost[(u, j)] = c + 1
                    queue.append((u, j))
    return False


@dataclass(frozen=True)
class FftpReport:
    """Outcome of :func:`check_fftp`.

       A failing report names the shortlex-least word wx for which no
       strictly shorter fellow traveler exists.
    """

    M: int
    R: int
    passed: bool
    paths_checked: int
    failures: int = 0
    counterexample: Word | None = None
    notes: tuple[str, ...] = (ONE_EDGE_NOTE,)

    def replay(self, ball: Ball) -> bool:
        """Re-run the check on the counterexample; :data:`True` means it
           fails again"""
        if self.counterexample is None:
            return False
        return not replay_fftp(ball, self.M, self.counterexample)


def replay_fftp(ball: Ball, M: int, word: Word) -> bool:
    """Check a single non-geodesic word; :data:`True` if a strictly shorter
       asynchronous M-fellow traveler with the same endpoints exists"""
    return _has_shorter_fellow(ball, M, ball.path(word))


def check_fftp(ball: Ball, M: int, R: int) -> FftpReport:
    """Check every one-edge continuation wx of a geodesic word w with
       ℓ(w) ≤ *R*: whenever wx is not geodesic, look for a strictly shorter
       path with the same endpoints that asynchronously *M*-fellow travels
       with it.

       :raises ResourceError: If ``ball.radius < R + M + 1``
    """
    if ball.radius < R + M + 1:
        raise ResourceError(f"check_fftp needs radius ≥ {R + M + 1}",
                            required=R + M + 1)
    letters = ball.alphabet.order
    slots = {x: i for i, x in enumerate(ball.alphabet.letters)}
    checked = failures = 0
    counterexample: Word | None = None

    # geodesic words in shortlex order, with their vertex paths
    layer: list[tuple[Word, tuple[VertexId, ...]]] = [((), (0,))]
    for length in range(R + 1):
        following = []
        for word, path in layer:
            v = path[-1]
            for letter in letters:
                u = ball.adjacency[v][slots[letter]]
                if ball.dist[u] == ball.dist[v] + 1:
                    following.append((word + (letter,), path + (u,)))
                    continue
                checked += 1
                if not _has_shorter_fellow(ball, M, path + (u,)):
                    failures += 1
                    if counterexample is None:
                        counterexample = word + (letter,)
        logger.debug("fftp checks through length %d: %d checked",
                     length, checked)
        layer = following
    return FftpReport(M, R, failures == 0, checked, failures, counterexample)


class ProjectionMode(Enum):
    """Which projection hypothesis to check"""

    #: each z ∈ π(v) has some z' ∈ π(u) with d(z, z') ≤ M
    FELLOW = "fellow"

    #: diam(π(u) ∪ π(v)) ≤ M
    BOUNDED = "bounded"


@dataclass(frozen=True)
class ProjectionReport:
    """Outcome of :func:`check_projections`.

       *fellow_implied* records the meta-check that a bounded pass is also
       a fellow pass; it is :data:`None` for fellow-mode runs and failures.
    """

    subgroup: str
    mode: ProjectionMode
    M: int
    R: int
    passed: bool
    edges_checked: int
    counterexample: tuple[Word, Word] | None = None
    fellow_implied: bool | None = None


def _edge_ok(ball: Ball, mode: ProjectionMode, M: int,
             here: frozenset[VertexId], there: frozenset[VertexId]) -> bool:
    if mode is ProjectionMode.BOUNDED:
        union = sorted(here | there)
        return all(ball.distance(a, b) <= M
                   for k, a in enumerate(union) for b in union[k + 1:])
    return all(any(ball.distance(z, y) <= M for y in here) for z in there)


def _scan(ball: Ball, members: frozenset[VertexId], mode: ProjectionMode,
          M: int, R: int) -> tuple[int, tuple[VertexId, VertexId] | None]:
    limit = ball.count_within(R)
    projections = [projection_set(ball, members, v).members
                   for v in range(limit)]
    checked = 0
    for u in range(limit):
        for v in ball.adjacency[u]:
            if v is None or v >= limit:
                continue
            checked += 1
            if not _edge_ok(ball, mode, M, projections[u], projections[v]):
                return checked, (u, v)
    return checked, None


def check_projections(ball: Ball, H: SubgroupOracle, M: int, R: int,
                      mode: ProjectionMode) -> ProjectionReport:
    """Check fellow or bounded projections onto *H* across every edge of
       the *R*-ball.

       :raises ResourceError: If some projection cannot be certified
       :raises InvariantError: If a bounded pass is not a fellow pass
    """
    members = subgroup_members(ball, H)
    checked, bad = _scan(ball, members, mode, M, R)
    counterexample = None if bad is None \
        else (ball.words[bad[0]], ball.words[bad[1]])
    implied = None
    if mode is ProjectionMode.BOUNDED and bad is None:
        _, fellow_bad = _scan(ball, members, ProjectionMode.FELLOW, M, R)
        implied = fellow_bad is None
        if not implied:
            raise InvariantError(f"subgroup {H.name}: bounded projections "
                                 f"pass at M={M} but fellow projections "
                                 "fail")
    return ProjectionReport(H.name, mode, M, R, bad is None, checked,
                            counterexample, implied)
