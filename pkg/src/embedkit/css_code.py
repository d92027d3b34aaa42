"""Surface codes: H_X from the vertex stars, H_Z from the face boundaries."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .errors import InconsistencyError, OrthogonalityError, ValidationError
from .gf2 import BinaryMatrix, BitVector, _Echelon, gf2_rank
from .surface_map import SurfaceMap

DEFAULT_CAP = 6


def vertex_edge_matrix(m: SurfaceMap) -> BinaryMatrix:
    rows = [0] * m.vertex_count
    for e, (a, b) in enumerate(m.edges):
        rows[a] ^= 1 << e
        rows[b] ^= 1 << e
    return BinaryMatrix(m.vertex_count, m.num_edges, tuple(rows))


def face_edge_matrix(m: SurfaceMap) -> BinaryMatrix:
    """Face-edge incidence mod 2; an edge traversed twice by one face contributes 0."""
    rows = []
    for face in m.faces:
        row = 0
        for e in face.edge_indices:
            row ^= 1 << e
        rows.append(row)
    return BinaryMatrix(m.num_faces, m.num_edges, tuple(rows))


def check_orthogonal(h_x: BinaryMatrix, h_z: BinaryMatrix) -> None:
    if h_x.cols != h_z.cols:
        raise ValidationError(f"H_X has {h_x.cols} columns, H_Z has {h_z.cols}")
    for i, rx in enumerate(h_x.data):
        for j, rz in enumerate(h_z.data):
            if (rx & rz).bit_count() & 1:
                raise OrthogonalityError(f"row {i} of H_X and row {j} of H_Z overlap oddly", (i, j))


@dataclass(frozen=True)
class CssCode:
    h_x: BinaryMatrix
    h_z: BinaryMatrix
    n: int
    k: int
    d: int | None = None
    d_search_cap: int | None = None

    @classmethod
    def from_matrices(cls, h_x: BinaryMatrix, h_z: BinaryMatrix) -> CssCode:
        check_orthogonal(h_x, h_z)
        n = h_x.cols
        k = n - gf2_rank(h_x) - gf2_rank(h_z)
        return cls(h_x, h_z, n, k)

    def with_distance(self, result: DistanceResult) -> CssCode:
        return CssCode(self.h_x, self.h_z, self.n, self.k, result.d, result.cap)

    def params(self) -> str:
        d = "?" if self.d is None else str(self.d)
        return f"[[{self.n},{self.k},{d}]]"


def build_css(m: SurfaceMap) -> CssCode:
    """Surface code of ``m``; checks orthogonality and k == 2 * genus."""
    h_x = vertex_edge_matrix(m)
    h_z = face_edge_matrix(m)
    try:
        check_orthogonal(h_x, h_z)
    except OrthogonalityError as exc:
        v, f = exc.pair
        raise OrthogonalityError(f"vertex {v} and face {f} share an odd number of edges", exc.pair) from None
    code = CssCode.from_matrices(h_x, h_z)
    if code.k != 2 * m.genus:
        raise InconsistencyError(f"k = {code.k} but 2g = {2 * m.genus}")
    return code


# --- minimum distance -------------------------------------------------------


@dataclass(frozen=True)
class DistanceResult:
    """``d`` is the certified distance, or ``None`` when every weight <= cap was ruled out.

    ``logical`` is a minimum-weight logical operator (support bit-vector) and
    ``kind`` is ``"Z"`` (kernel of H_X) or ``"X"`` (kernel of H_Z).
    """

    d: int | None
    cap: int
    logical: BitVector | None = None
    kind: str | None = None

    @property
    def certified(self) -> bool:
        return self.d is not None

    @property
    def lower_bound(self) -> int:
        return self.d if self.d is not None else self.cap + 1

    def __str__(self) -> str:
        return str(self.d) if self.d is not None else f">{self.cap}"


def _search_weight(
    checks: Sequence[BitVector],
    stabilizers: Sequence[BitVector],
    w: int,
    first_indices: Sequence[int],
) -> BitVector | None:
    """Smallest (lexicographic) support of weight ``w`` that is a logical operator.

    ``checks`` are the columns of the parity-check matrix (syndromes); a
    support is in the kernel when its syndromes XOR to zero, and is logical
    when it is not in the span of ``stabilizers``.
    """
    ncols = len(checks)
    ech = _Echelon(stabilizers)
    by_syndrome: dict[int, list[int]] = {}
    for j, s in enumerate(checks):
        by_syndrome.setdefault(s, []).append(j)

    def rec(start: int, depth: int, syndrome: int, support: int) -> BitVector | None:
        if depth == 1:
            for j in by_syndrome.get(syndrome, ()):
                if j >= start:
                    v = support | (1 << j)
                    if ech.reduce(v):
                        return v
            return None
        for j in range(start, ncols - depth + 1):
            found = rec(j + 1, depth - 1, syndrome ^ checks[j], support | (1 << j))
            if found is not None:
                return found
        return None

    for i in first_indices:
        if w == 1:
            if checks[i] == 0 and ech.reduce(1 << i):
                return 1 << i
            continue
        found = rec(i + 1, w - 1, checks[i], 1 << i)
        if found is not None:
            return found
    return None


def _search_block(args: tuple) -> BitVector | None:
    return _search_weight(*args)


def _worker_count(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("EMBEDKIT_THREADS", "1") or 1)
    return max(1, workers)


def min_distance(c: CssCode, cap: int = DEFAULT_CAP, workers: int | None = None) -> DistanceResult:
    """Minimum weight of a logical operator, searched up to weight ``cap``.

    Z-type logicals lie in ker(H_X) outside rowspace(H_Z); X-type the other
    way round. Supports are enumerated in increasing weight, so the first
    hit is the distance. With ``workers > 1`` each weight is split by the
    smallest support index; the lexicographically first hit wins, matching
    the serial result.
    """
    if cap < 1:
        raise ValidationError(f"cap must be >= 1, got {cap}")
    if c.k == 0:
        raise ValidationError("no logical operators: k = 0")
    workers = _worker_count(workers)
    kinds = (
        ("Z", c.h_x.columns(), c.h_z.data),
        ("X", c.h_z.columns(), c.h_x.data),
    )
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for w in range(1, min(cap, c.n) + 1):
            for kind, checks, stabilizers in kinds:
                firsts = list(range(c.n - w + 1))
                if pool is None:
                    found = _search_weight(checks, stabilizers, w, firsts)
                else:
                    blocks = [firsts[i::workers] for i in range(workers)]
                    jobs = [(checks, stabilizers, w, sorted(b)) for b in blocks if b]
                    hits = [h for h in pool.map(_search_block, jobs) if h is not None]
                    found = min(hits, key=_support_key) if hits else None
                if found is not None:
                    return DistanceResult(w, cap, found, kind)
    finally:
        if pool is not None:
            pool.shutdown()
    return DistanceResult(None, cap)


def _support_key(v: BitVector) -> list[int]:
    return [j for j in range(v.bit_length()) if (v >> j) & 1]


# --- comparing matrices up to row/column permutation --------------------------


def equivalent_up_to_permutation(
    a: BinaryMatrix, b: BinaryMatrix
) -> tuple[list[int], list[int]] | None:
    """Find ``(row_perm, col_perm)`` with ``b.permuted(row_perm, col_perm) == a``.

    Columns are assigned one at a time; after each assignment the multiset of
    row prefixes must agree, which prunes hard on incidence matrices.
    """
    if a.shape != b.shape:
        return None
    if sorted(r.bit_count() for r in a.data) != sorted(r.bit_count() for r in b.data):
        return None
    ca, cb = a.columns(), b.columns()

    def col_sig(m: BinaryMatrix, col: int) -> tuple:
        return (col.bit_count(), tuple(sorted(m.data[i].bit_count() for i in range(m.rows) if (col >> i) & 1)))

    sig_a = [col_sig(a, x) for x in ca]
    sig_b = [col_sig(b, x) for x in cb]
    if sorted(sig_a) != sorted(sig_b):
        return None

    ncols = a.cols
    col_perm: list[int] = []
    used = [False] * ncols

    def prefixes(cols_: Sequence[int], nrows: int) -> list[tuple[int, ...]]:
        return sorted(tuple((c >> i) & 1 for c in cols_) for i in range(nrows))

    def extend(j: int) -> bool:
        if j == ncols:
            return True
        target = prefixes(ca[: j + 1], a.rows)
        for cand in range(ncols):
            if used[cand] or sig_b[cand] != sig_a[j]:
                continue
            col_perm.append(cand)
            if prefixes([cb[x] for x in col_perm], b.rows) == target:
                used[cand] = True
                if extend(j + 1):
                    return True
                used[cand] = False
            col_perm.pop()
        return False

    if not extend(0):
        return None
    permuted_rows = b.permuted(range(b.rows), col_perm).data
    remaining = list(range(b.rows))
    row_perm = []
    for row in a.data:
        idx = next(i for i in remaining if permuted_rows[i] == row)
        remaining.remove(idx)
        row_perm.append(idx)
    return row_perm, col_perm
