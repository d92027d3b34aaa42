"""Rotation systems and the orientable 2-cell embeddings they induce.

A map is stored as darts (directed edges). Edge ``e`` owns darts ``2e`` and
``2e + 1``; dart ``2e`` runs from ``edges[e][0]`` to ``edges[e][1]``. The
vertex rotation sends a dart to the next dart leaving the same vertex, and
the face permutation is ``phi(d) = rotation(reverse(d))``, i.e. the dart
``(a, b)`` is followed by ``(b, p_b(a))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InconsistencyError, ValidationError


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic neighbour order at every vertex of a simple connected graph."""

    vertex_count: int
    rotations: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotations", tuple(tuple(p) for p in self.rotations))
        n = self.vertex_count
        if n < 1:
            raise ValidationError("vertex_count must be positive")
        if len(self.rotations) != n:
            raise ValidationError(f"expected {n} rotations, got {len(self.rotations)}")
        neighbours = []
        for v, p in enumerate(self.rotations):
            seen = set(p)
            if len(seen) != len(p):
                raise ValidationError(f"vertex {v}: repeated neighbour in rotation", vertex=v)
            if v in seen:
                raise ValidationError(f"vertex {v}: rotation contains the vertex itself", vertex=v)
            for u in p:
                if not (0 <= u < n):
                    raise ValidationError(f"vertex {v}: neighbour {u} out of range", vertex=v)
            neighbours.append(seen)
        for v, seen in enumerate(neighbours):
            for u in seen:
                if v not in neighbours[u]:
                    raise ValidationError(
                        f"vertex {v}: lists {u} but {u} does not list {v}", vertex=v
                    )
        reached = {0}
        stack = [0]
        while stack:
            for u in neighbours[stack.pop()]:
                if u not in reached:
                    reached.add(u)
                    stack.append(u)
        if len(reached) != n:
            missing = min(set(range(n)) - reached)
            raise ValidationError(f"graph is disconnected: vertex {missing} unreachable from 0", vertex=missing)

    @classmethod
    def from_mapping(cls, rotations: Mapping[int, Sequence[int]]) -> RotationSystem:
        n = len(rotations)
        return cls(n, tuple(tuple(rotations[v]) for v in range(n)))

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges sorted by (min endpoint, max endpoint)."""
        return sorted({(min(v, u), max(v, u)) for v, p in enumerate(self.rotations) for u in p})

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def successor(self, v: int, u: int) -> int:
        """p_v(u): the neighbour after ``u`` in the rotation at ``v``."""
        p = self.rotations[v]
        return p[(p.index(u) + 1) % len(p)]

    def normalized(self) -> RotationSystem:
        """Same cyclic orders, each row rotated to start at its smallest neighbour."""
        rows = []
        for p in self.rotations:
            i = p.index(min(p)) if p else 0
            rows.append(p[i:] + p[:i])
        return RotationSystem(self.vertex_count, tuple(rows))

    def same_cyclic_orders(self, other: RotationSystem) -> bool:
        return self.normalized() == other.normalized()

    def mirror(self) -> RotationSystem:
        """Reverse every rotation (the mirror-image embedding)."""
        return RotationSystem(self.vertex_count, tuple(p[:1] + p[:0:-1] for p in self.rotations))


@dataclass(frozen=True, order=True)
class DirectedEdge:
    tail: int
    head: int
    edge: int = -1


@dataclass(frozen=True)
class FaceWalk:
    boundary: tuple[DirectedEdge, ...]
    darts: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.boundary)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(d.tail for d in self.boundary)

    @property
    def edge_indices(self) -> tuple[int, ...]:
        return tuple(d.edge for d in self.boundary)


@dataclass(frozen=True)
class SurfaceMap:
    """A traced 2-cell embedding.

    ``dart_rotation[v]`` lists the darts leaving ``v`` in cyclic order.
    Loops and parallel edges are allowed so that duals of arbitrary maps
    can be represented.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    dart_rotation: tuple[tuple[int, ...], ...]
    faces: tuple[FaceWalk, ...]
    euler_char: int
    genus: int

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def dart_tail(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def dart_head(self, d: int) -> int:
        return self.edges[d >> 1][1 - (d & 1)]

    def dart(self, d: int) -> DirectedEdge:
        return DirectedEdge(self.dart_tail(d), self.dart_head(d), d >> 1)

    def face_of_dart(self) -> list[int]:
        owner = [-1] * (2 * self.num_edges)
        for f, walk in enumerate(self.faces):
            for d in walk.darts:
                owner[d] = f
        return owner

    def is_simple(self) -> bool:
        if any(a == b for a, b in self.edges):
            return False
        return len({(min(a, b), max(a, b)) for a, b in self.edges}) == len(self.edges)

    @property
    def rotation(self) -> RotationSystem:
        """The neighbour rotation system; only defined for simple maps."""
        if not self.is_simple():
            raise ValidationError("map has loops or parallel edges; no simple rotation system")
        return RotationSystem(
            self.vertex_count,
            tuple(tuple(self.dart_head(d) for d in darts) for darts in self.dart_rotation),
        )

    def face_lengths(self) -> list[int]:
        return [len(f) for f in self.faces]


def _assemble(
    vertex_count: int,
    edges: Sequence[tuple[int, int]],
    dart_rotation: Sequence[Sequence[int]],
) -> SurfaceMap:
    ndarts = 2 * len(edges)
    nxt = [-1] * ndarts
    for darts in dart_rotation:
        for i, d in enumerate(darts):
            nxt[d] = darts[(i + 1) % len(darts)]
    if -1 in nxt:
        raise ValidationError(f"dart {nxt.index(-1)} missing from every vertex rotation")

    def tail(d: int) -> int:
        return edges[d >> 1][d & 1]

    def head(d: int) -> int:
        return edges[d >> 1][1 - (d & 1)]

    order = sorted(range(ndarts), key=lambda d: (tail(d), head(d), d >> 1))
    used = [False] * ndarts
    faces = []
    for start in order:
        if used[start]:
            continue
        walk = []
        d = start
        while not used[d]:
            used[d] = True
            walk.append(d)
            d = nxt[d ^ 1]
        if d != start:
            raise InconsistencyError("face permutation is not a bijection")
        boundary = tuple(DirectedEdge(tail(x), head(x), x >> 1) for x in walk)
        faces.append(FaceWalk(boundary, tuple(walk)))
    if not edges:
        # a lone vertex on the sphere: one face with empty boundary
        faces.append(FaceWalk((), ()))

    chi = vertex_count - len(edges) + len(faces)
    if chi % 2:
        raise InconsistencyError(f"odd Euler characteristic {chi}")
    genus = (2 - chi) // 2
    if genus < 0:
        raise InconsistencyError(f"negative genus from Euler characteristic {chi}")
    return SurfaceMap(
        vertex_count,
        tuple(tuple(e) for e in edges),
        tuple(tuple(r) for r in dart_rotation),
        tuple(faces),
        chi,
        genus,
    )


def trace_faces(rot: RotationSystem) -> SurfaceMap:
    """Trace the faces of the embedding induced by ``rot``.

    Faces are the orbits of ``(a, b) -> (b, p_b(a))``; each new orbit starts
    at the lexicographically smallest directed edge not yet used, and edges
    are indexed in lexicographic order of their endpoint pairs.
    """
    edges = rot.edges()
    index = {e: i for i, e in enumerate(edges)}

    def dart(a: int, b: int) -> int:
        return 2 * index[(a, b)] if a < b else 2 * index[(b, a)] + 1

    dart_rotation = [[dart(v, u) for u in p] for v, p in enumerate(rot.rotations)]
    return _assemble(rot.vertex_count, edges, dart_rotation)


def genus_of(m: SurfaceMap) -> int:
    chi = m.vertex_count - m.num_edges + m.num_faces
    if chi % 2:
        raise InconsistencyError(f"odd Euler characteristic {chi}")
    return (2 - chi) // 2


def dual_map(m: SurfaceMap) -> SurfaceMap:
    """Dual map: one vertex per face, dual edge ``e`` crosses primal edge ``e``.

    The rotation at a dual vertex is the dart sequence of its face, so the
    dual's faces come back as the primal vertex rotations.
    """
    owner = m.face_of_dart()
    edges = [(owner[2 * e], owner[2 * e + 1]) for e in range(m.num_edges)]
    rotation = [f.darts for f in m.faces]
    return _assemble(m.num_faces, edges, rotation)


def simple_graph(m: SurfaceMap) -> list[set[int]]:
    """Adjacency sets of the underlying simple graph (loops dropped, multi-edges merged)."""
    adj: list[set[int]] = [set() for _ in range(m.vertex_count)]
    for a, b in m.edges:
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def find_isomorphism(g: Sequence[set[int]], h: Sequence[set[int]]) -> dict[int, int] | None:
    """Vertex bijection ``g -> h`` preserving adjacency, or ``None``.

    Degree-multiset prefilter, then backtracking in BFS order where each
    candidate must agree with every already-mapped neighbour and non-neighbour.
    """
    n = len(g)
    if n != len(h):
        return None
    if sorted(map(len, g)) != sorted(map(len, h)):
        return None
    if sum(map(len, g)) != sum(map(len, h)):
        return None

    def signature(adj: Sequence[set[int]], v: int) -> tuple:
        return len(adj[v]), tuple(sorted(len(adj[u]) for u in adj[v]))

    sig_g = [signature(g, v) for v in range(n)]
    sig_h = [signature(h, v) for v in range(n)]
    if sorted(sig_g) != sorted(sig_h):
        return None

    order: list[int] = []
    seen: set[int] = set()
    for root in sorted(range(n), key=lambda v: (-len(g[v]), v)):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in sorted(g[v]):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int, w: int) -> bool:
        for u, x in mapping.items():
            if (u in g[v]) != (x in h[w]):
                return False
        return True

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        mapped_nbrs = [mapping[u] for u in g[v] if u in mapping]
        if mapped_nbrs:
            candidates = set.intersection(*(h[x] for x in mapped_nbrs)) - used
        else:
            candidates = set(range(n)) - used
        for w in sorted(candidates):
            if sig_h[w] != sig_g[v] or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


@dataclass(frozen=True)
class SelfDuality:
    """Outcome of :func:`is_self_dual`; truthy when self-dual.

    ``witness`` maps each primal vertex to the dual vertex (face index) it
    corresponds to.
    """

    self_dual: bool
    witness: dict[int, int] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.self_dual


def faces_pairwise_adjacent(m: SurfaceMap) -> bool:
    """Every pair of distinct faces shares exactly one edge, and none shares an edge with itself."""
    owner = m.face_of_dart()
    pairs = []
    for e in range(m.num_edges):
        f, g = owner[2 * e], owner[2 * e + 1]
        if f == g:
            return False
        pairs.append((min(f, g), max(f, g)))
    nf = m.num_faces
    return len(pairs) == len(set(pairs)) == nf * (nf - 1) // 2


def is_self_dual(m: SurfaceMap) -> SelfDuality:
    if m.num_faces != m.vertex_count:
        return SelfDuality(False, None, f"{m.num_faces} faces vs {m.vertex_count} vertices")
    primal = simple_graph(m)
    n = m.vertex_count
    complete = all(len(adj) == n - 1 for adj in primal) and m.num_edges == n * (n - 1) // 2
    if complete:
        if faces_pairwise_adjacent(m):
            return SelfDuality(True, {v: v for v in range(n)})
        return SelfDuality(False, None, "some pair of faces does not share exactly one edge")
    dual = simple_graph(dual_map(m))
    witness = find_isomorphism(primal, dual)
    if witness is None:
        return SelfDuality(False, None, "dual graph is not isomorphic to the primal graph")
    return SelfDuality(True, witness)


def face_census(m: SurfaceMap) -> dict[int, int]:
    """Face length -> number of faces of that length."""
    census: dict[int, int] = {}
    for length in m.face_lengths():
        census[length] = census.get(length, 0) + 1
    return dict(sorted(census.items()))


def cyclic_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    """Equality of two sequences up to cyclic rotation."""
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = list(b) + list(b)
    a = list(a)
    return any(doubled[i : i + len(a)] == a for i in range(len(b)))
