"""Dense binary matrices with rows stored as int bitsets.

Bit ``j`` of a row integer is column ``j``. Bit-vectors passed around the
package use the same encoding; :func:`to_bitvector` converts from 0/1
sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

BitVector = int


def to_bitvector(bits: Iterable[int] | int) -> BitVector:
    if isinstance(bits, int):
        return bits
    value = 0
    for j, b in enumerate(bits):
        if b & 1:
            value |= 1 << j
    return value


def from_bitvector(value: BitVector, length: int) -> list[int]:
    return [(value >> j) & 1 for j in range(length)]


def weight(value: BitVector) -> int:
    return value.bit_count()


@dataclass(frozen=True)
class BinaryMatrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.data)}")
        limit = 1 << self.cols
        for i, row in enumerate(self.data):
            if row < 0 or row >= limit:
                raise ValueError(f"row {i} does not fit in {self.cols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> BinaryMatrix:
        if cols is None:
            if not rows:
                raise ValueError("cols is required for an empty matrix")
            cols = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"row {i} has length {len(row)}, expected {cols}")
        return cls(len(rows), cols, tuple(to_bitvector(r) for r in rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BinaryMatrix:
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, size: int) -> BinaryMatrix:
        return cls(size, size, tuple(1 << i for i in range(size)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        if not (0 <= j < self.cols):
            raise IndexError(j)
        return (self.data[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return self.data[i]

    def column(self, j: int) -> BitVector:
        """Column ``j`` as a bit-vector over the rows."""
        value = 0
        for i, row in enumerate(self.data):
            if (row >> j) & 1:
                value |= 1 << i
        return value

    def columns(self) -> list[BitVector]:
        cols = [0] * self.cols
        for i, row in enumerate(self.data):
            while row:
                low = row & -row
                cols[low.bit_length() - 1] |= 1 << i
                row ^= low
        return cols

    def transpose(self) -> BinaryMatrix:
        return BinaryMatrix(self.cols, self.rows, tuple(self.columns()))

    def __matmul__(self, other: BinaryMatrix) -> BinaryMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for row in self.data:
            acc = 0
            while row:
                low = row & -row
                acc ^= other.data[low.bit_length() - 1]
                row ^= low
            out.append(acc)
        return BinaryMatrix(self.rows, other.cols, tuple(out))

    def multiply_vector(self, v: BitVector) -> BitVector:
        """Return ``self @ v`` as a bit-vector over the rows."""
        out = 0
        for i, row in enumerate(self.data):
            if (row & v).bit_count() & 1:
                out |= 1 << i
        return out

    def is_zero(self) -> bool:
        return not any(self.data)

    def to_lists(self) -> list[list[int]]:
        return [from_bitvector(row, self.cols) for row in self.data]

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> BinaryMatrix:
        """Row ``i`` of the result is row ``row_perm[i]``; likewise for columns."""
        out = []
        for i in row_perm:
            src = self.data[i]
            out.append(sum(((src >> c) & 1) << j for j, c in enumerate(col_perm)))
        return BinaryMatrix(len(row_perm), len(col_perm), tuple(out))

    def __str__(self) -> str:
        return "\n".join("".join(map(str, r)) for r in self.to_lists())


class _Echelon:
    """Reduced row-echelon basis keyed by pivot bit (lowest set bit)."""

    def __init__(self, rows: Iterable[BitVector]):
        self.basis: dict[int, BitVector] = {}
        for row in rows:
            self.add(row)

    def reduce(self, v: BitVector) -> BitVector:
        for pivot, row in self.basis.items():
            if (v >> pivot) & 1:
                v ^= row
        return v

    def add(self, v: BitVector) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        pivot = (v & -v).bit_length() - 1
        for p, row in self.basis.items():
            if (row >> pivot) & 1:
                self.basis[p] = row ^ v
        self.basis[pivot] = v
        return True

    def __len__(self) -> int:
        return len(self.basis)


def gf2_rank(a: BinaryMatrix) -> int:
    return len(_Echelon(a.data))


def row_space_contains(a: BinaryMatrix, v: Sequence[int] | BitVector) -> bool:
    """True iff ``v`` is a mod-2 combination of rows of ``a``."""
    if not isinstance(v, int):
        if len(v) != a.cols:
            raise ValueError(f"vector length {len(v)} != {a.cols} columns")
        v = to_bitvector(v)
    elif v >> a.cols:
        raise ValueError(f"vector has bits beyond {a.cols} columns")
    return _Echelon(a.data).reduce(v) == 0


def kernel_basis(a: BinaryMatrix) -> list[BitVector]:
    """Basis of the right null space ``{v : a v^T = 0}``."""
    ech = _Echelon(a.data)
    pivots = set(ech.basis)
    basis = []
    for free in range(a.cols):
        if free in pivots:
            continue
        v = 1 << free
        for pivot, row in ech.basis.items():
            if (row >> free) & 1:
                v |= 1 << pivot
        basis.append(v)
    return basis
