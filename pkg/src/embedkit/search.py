"""Exhaustive search for self-dual orientable embeddings of K_{r,s}.

Vertices ``0..r-1`` form one side and ``r..r+s-1`` the other. Vertex 0 keeps
the identity rotation; every other rotation is written starting at its
smallest neighbour, so each cyclic order is enumerated once. Vertices are
assigned in label order and rotations in lexicographic order, so the first
hit is the lexicographically smallest self-dual rotation system.

A self-dual embedding has one face per vertex, dual to it, so the face
census must be ``r`` faces of length ``s`` and ``s`` faces of length ``r``.
Partial assignments are pruned as soon as a closed face or an open walk
contradicts that census.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import ValidationError
from .scheme_gen import bipartite_self_dual_exists
from .surface_map import RotationSystem, SurfaceMap, is_self_dual, trace_faces

FOUND = "found"
NOT_FOUND = "not-found"
NONEXISTENT = "nonexistent"


@dataclass(frozen=True)
class SearchOutcome:
    status: str
    surface: SurfaceMap | None = None
    nodes: int = 0
    message: str = ""

    def __bool__(self) -> bool:
        return self.status == FOUND


def bipartite_rotation_choices(r: int, s: int) -> list[list[tuple[int, ...]]]:
    choices = []
    for v in range(r + s):
        nbrs = list(range(r, r + s)) if v < r else list(range(r))
        if v == 0:
            choices.append([tuple(nbrs)])
            continue
        first, rest = nbrs[0], nbrs[1:]
        choices.append([(first,) + p for p in itertools.permutations(rest)])
    return choices


class _Pruner:
    """Walk the face permutation on the darts whose successor is already fixed."""

    def __init__(self, r: int, s: int):
        self.n = r + s
        self.lengths = {r, s}
        self.max_len = max(r, s)
        self.succ: list[dict[int, int] | None] = [None] * self.n

    def assign(self, v: int, rotation: tuple[int, ...]) -> None:
        k = len(rotation)
        self.succ[v] = {rotation[i]: rotation[(i + 1) % k] for i in range(k)}

    def unassign(self, v: int) -> None:
        self.succ[v] = None

    def consistent(self, v: int) -> bool:
        """Follow each walk leaving the darts that enter ``v``.

        Any face closed by the latest assignment passes through ``v``, so
        this sees every new closed face; long open walks are caught when
        their forward part already exceeds the longest allowed face.
        """
        succ = self.succ
        seen: set[tuple[int, int]] = set()
        for a in succ[v]:  # type: ignore[union-attr]
            start = (a, v)
            if start in seen:
                continue
            x, y = start
            steps = 0
            while True:
                seen.add((x, y))
                sy = succ[y]
                if sy is None:
                    break
                x, y = y, sy[x]
                steps += 1
                if (x, y) == start:
                    if steps not in self.lengths:
                        return False
                    break
                if steps >= self.max_len:
                    return False
        return True


def _search_from(
    r: int, s: int, choices: list[list[tuple[int, ...]]], first_options: list[int], budget: int | None
) -> tuple[RotationSystem | None, int, bool]:
    """Depth-first search; returns (rotation, nodes expanded, budget_exhausted)."""
    n = r + s
    pruner = _Pruner(r, s)
    assignment: list[tuple[int, ...]] = [()] * n
    assignment[0] = choices[0][0]
    pruner.assign(0, assignment[0])
    nodes = 0
    exhausted = False

    def rec(v: int) -> RotationSystem | None:
        nonlocal nodes, exhausted
        if v == n:
            rot = RotationSystem(n, tuple(assignment))
            if is_self_dual(trace_faces(rot)):
                return rot
            return None
        options = [choices[v][i] for i in first_options] if v == 1 else choices[v]
        for rotation in options:
            if budget is not None and nodes >= budget:
                exhausted = True
                return None
            nodes += 1
            assignment[v] = rotation
            pruner.assign(v, rotation)
            if pruner.consistent(v):
                found = rec(v + 1)
                if found is not None:
                    return found
            pruner.unassign(v)
            if exhausted:
                return None
        return None

    found = rec(1)
    return found, nodes, exhausted


def _search_block(args: tuple) -> tuple[RotationSystem | None, int, bool]:
    return _search_from(*args)


def search_self_dual_bipartite(
    r: int, s: int, budget: int | None = None, workers: int | None = None
) -> SearchOutcome:
    """Search K_{r,s} rotation systems for a self-dual embedding.

    ``budget`` caps the number of rotation assignments tried; ``None`` means
    exhaustive. Parallel workers split the options at vertex 1 and are only
    used for unbounded searches, so results never depend on the worker count.
    """
    if (r, s) == (6, 6):
        return SearchOutcome(NONEXISTENT, message="K_{6,6} has no orientable self-dual embedding")
    if r % 2 or s % 2 or r < 4 or s < 4:
        raise ValidationError(f"r and s must be even and >= 4, got r={r}, s={s}")
    if not bipartite_self_dual_exists(r, s):
        return SearchOutcome(NONEXISTENT, message=f"K_{{{r},{s}}} has no orientable self-dual embedding")
    if budget is not None and budget < 0:
        raise ValidationError("budget must be non-negative")
    choices = bipartite_rotation_choices(r, s)
    all_first = list(range(len(choices[1])))
    if workers is None:
        workers = int(os.environ.get("EMBEDKIT_THREADS", "1") or 1)

    if workers > 1 and budget is None:
        blocks = [[i] for i in all_first]
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_search_block, [(r, s, choices, b, None) for b in blocks]))
        nodes = sum(res[1] for res in results)
        for rot, _, _ in results:
            if rot is not None:
                return SearchOutcome(FOUND, trace_faces(rot), nodes)
        return SearchOutcome(NOT_FOUND, None, nodes, "search space exhausted without a self-dual map")

    rot, nodes, exhausted = _search_from(r, s, choices, all_first, budget)
    if rot is not None:
        return SearchOutcome(FOUND, trace_faces(rot), nodes)
    if exhausted or budget == 0:
        return SearchOutcome(NOT_FOUND, None, nodes, f"budget of {budget} assignments exhausted")
    return SearchOutcome(NOT_FOUND, None, nodes, "search space exhausted without a self-dual map")
