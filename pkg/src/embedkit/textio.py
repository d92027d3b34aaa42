"""Plain-text formats for rotation systems, GF(2) matrices and code bundles.

Rotation system::

    ROT v=5
    0: 2 4 3 1
    1: 3 0 4 2
    ...

Matrix::

    GF2 2 3
    111
    011

Code bundle parameters line::

    CSS n=10 k=2 d=3 cap=6
"""

from __future__ import annotations

import re
from pathlib import Path

from .errors import FormatError, ValidationError
from .gf2 import BinaryMatrix
from .surface_map import RotationSystem


def format_rotation(rot: RotationSystem) -> str:
    lines = [f"ROT v={rot.vertex_count}"]
    lines += [f"{v}: " + " ".join(map(str, p)) for v, p in enumerate(rot.rotations)]
    return "\n".join(lines) + "\n"


def parse_rotation(text: str) -> RotationSystem:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty input", 1)
    m = re.fullmatch(r"ROT v=(\d+)", lines[0].strip())
    if not m:
        raise FormatError(f"expected 'ROT v=<n>', got {lines[0]!r}", 1)
    n = int(m.group(1))
    body = [(i, line) for i, line in enumerate(lines[1:], start=2) if line.strip()]
    if len(body) != n:
        raise FormatError(f"expected {n} rotation lines, found {len(body)}", len(lines))
    rotations: list[tuple[int, ...] | None] = [None] * n
    for lineno, line in body:
        rm = re.fullmatch(r"\s*(\d+)\s*:((?:\s+\d+)*)\s*", line)
        if not rm:
            raise FormatError(f"expected '<vertex>: <neighbour> ...', got {line!r}", lineno)
        v = int(rm.group(1))
        if v >= n:
            raise FormatError(f"vertex {v} out of range 0..{n - 1}", lineno)
        if rotations[v] is not None:
            raise FormatError(f"vertex {v} listed twice", lineno)
        rotations[v] = tuple(int(x) for x in rm.group(2).split())
    try:
        return RotationSystem(n, tuple(rotations))  # type: ignore[arg-type]
    except ValidationError as exc:
        line = None
        if exc.vertex is not None:
            line = next(no for no, text_ in body if int(text_.split(":")[0]) == exc.vertex)
        raise FormatError(f"invalid rotation system: {exc}", line) from exc


def read_rotation(path: str | Path) -> RotationSystem:
    return parse_rotation(Path(path).read_text())


def format_matrix(a: BinaryMatrix) -> str:
    lines = [f"GF2 {a.rows} {a.cols}"]
    lines += ["".join(map(str, row)) for row in a.to_lists()]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> BinaryMatrix:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty input", 1)
    m = re.fullmatch(r"GF2 (\d+) (\d+)", lines[0].strip())
    if not m:
        raise FormatError(f"expected 'GF2 <rows> <cols>', got {lines[0]!r}", 1)
    rows, cols = int(m.group(1)), int(m.group(2))
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != rows:
        raise FormatError(f"expected {rows} matrix rows, found {len(body)}", len(lines))
    data = []
    for i, line in enumerate(body, start=2):
        line = line.strip()
        if len(line) != cols or set(line) - {"0", "1"}:
            raise FormatError(f"expected {cols} characters of 0/1, got {line!r}", i)
        data.append([int(ch) for ch in line])
    return BinaryMatrix.from_rows(data, cols)


def read_matrix(path: str | Path) -> BinaryMatrix:
    return parse_matrix(Path(path).read_text())


def format_params_line(n: int, k: int, d: int | None, cap: int) -> str:
    return f"CSS n={n} k={k} d={'?' if d is None else d} cap={cap}\n"


def parse_params_line(text: str) -> tuple[int, int, int | None, int]:
    m = re.fullmatch(r"CSS n=(\d+) k=(\d+) d=(\d+|\?) cap=(\d+)", text.strip())
    if not m:
        raise FormatError(f"bad parameters line {text.strip()!r}", 1)
    d = None if m.group(3) == "?" else int(m.group(3))
    return int(m.group(1)), int(m.group(2)), d, int(m.group(4))
