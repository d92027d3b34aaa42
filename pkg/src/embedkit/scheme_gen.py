"""Explicit rotation schemes for self-dual embeddings of K_{4r+1} and K_{4s}.

Both schemes are additive: row 0 lists every nonzero group element once and
row ``g`` is row 0 translated by ``g``. For K_{4r+1} the group is Z_{4r+1};
for K_n with 4 | n it is (Z_2)^sigma x Z_t where n = 2^sigma * t, t odd.
Group elements are labelled ``cyc + t * bits`` so vertex labels, and hence
matrix orders, are deterministic.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import BudgetExhausted, NonexistenceError, ValidationError
from .surface_map import (
    RotationSystem,
    SurfaceMap,
    cyclic_equal,
    faces_pairwise_adjacent,
    trace_faces,
)


class Family(str, Enum):
    CLASS_I = "class1"
    CLASS_II = "class2"
    CLASS_III = "class3"
    CLASS_IV = "class4"


_PARAM_NAMES = {
    Family.CLASS_I: ("r",),
    Family.CLASS_II: ("s",),
    Family.CLASS_III: ("r", "s"),
    Family.CLASS_IV: ("r", "s"),
}


def bipartite_self_dual_exists(r: int, s: int) -> bool:
    """Known existence of an orientable self-dual embedding of K_{r,s}.

    True for all even r, s > 2 except K_{6,6}.
    """
    if r % 2 or s % 2 or r <= 2 or s <= 2:
        return False
    return (r, s) != (6, 6)


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        names = _PARAM_NAMES[self.family]
        if len(self.params) != len(names):
            raise ValidationError(f"{self.family.value} takes parameters {','.join(names)}")
        p = dict(zip(names, self.params))
        if self.family is Family.CLASS_I and p["r"] < 1:
            raise ValidationError(f"class1 requires r >= 1, got r={p['r']}")
        if self.family is Family.CLASS_II and p["s"] < 2:
            raise ValidationError(f"class2 requires s >= 2, got s={p['s']}")
        if self.family is Family.CLASS_III:
            r, s = p["r"], p["s"]
            if (r, s) == (6, 6):
                raise NonexistenceError("K_{6,6} has no orientable self-dual embedding")
            if r % 4 or s % 4 or r < 4 or s < 4:
                raise ValidationError(f"class3 requires r, s positive multiples of 4, got r={r}, s={s}")
        if self.family is Family.CLASS_IV and (p["r"] < 2 or p["s"] < 2):
            raise ValidationError(f"class4 requires r >= 2 and s >= 2, got r={p['r']}, s={p['s']}")

    @classmethod
    def parse(cls, text: str) -> FamilySpec:
        """Parse ``class1:r=1``, ``class2:s=2``, ``class3:r=4,s=4``, ``class4:r=2,s=2``."""
        m = re.fullmatch(r"\s*(class[1-4])\s*:\s*(.*?)\s*", text)
        if not m:
            raise ValidationError(f"unrecognised family spec {text!r}")
        family = Family(m.group(1))
        names = _PARAM_NAMES[family]
        values: dict[str, int] = {}
        for item in filter(None, (x.strip() for x in m.group(2).split(","))):
            km = re.fullmatch(r"([a-z]+)\s*=\s*(-?\d+)", item)
            if not km or km.group(1) not in names or km.group(1) in values:
                raise ValidationError(f"bad parameter {item!r} in {text!r}")
            values[km.group(1)] = int(km.group(2))
        if set(values) != set(names):
            raise ValidationError(f"{family.value} needs {','.join(names)}; got {text!r}")
        return cls(family, tuple(values[n] for n in names))

    def __str__(self) -> str:
        names = _PARAM_NAMES[self.family]
        return f"{self.family.value}:" + ",".join(f"{n}={v}" for n, v in zip(names, self.params))


@dataclass(frozen=True)
class PredictedParams:
    n: int
    k: int
    d: int

    def __post_init__(self) -> None:
        if not (0 <= self.k <= self.n) or self.d < 1:
            raise ValidationError(f"inconsistent parameters [[{self.n},{self.k},{self.d}]]")

    def __str__(self) -> str:
        return f"[[{self.n},{self.k},{self.d}]]"


def predicted_params(spec: FamilySpec) -> PredictedParams:
    f, p = spec.family, spec.params
    if f is Family.CLASS_I:
        (r,) = p
        return PredictedParams(2 * r * (4 * r + 1), 2 * r * (4 * r - 3), 3)
    if f is Family.CLASS_II:
        (s,) = p
        return PredictedParams(2 * s * (4 * s - 1), 2 * (s - 1) * (4 * s - 1), 3)
    if f is Family.CLASS_III:
        r, s = p
        return PredictedParams(r * s, (r - 2) * (s - 2) // 2, 4)
    r, s = p
    return PredictedParams((2 * r + 1) * s * s, (r * s - 2) * (s - 1), 3)


def complete_graph_genus(n: int) -> int:
    """Genus of a self-dual embedding of K_n (n faces, all (n-1)-gons)."""
    return (n - 1) * (n - 4) // 4


# --- K_{4r+1} -------------------------------------------------------------


def _k4r1_row0(r: int) -> list[int]:
    row = []
    for k in range(1, r + 1):
        row += [2 * k - 1, -2 * k, -(2 * k - 1), 2 * k]
    return row


def scheme_k4r1(r: int) -> RotationSystem:
    if r < 1:
        raise ValidationError(f"r must be >= 1, got {r}")
    n = 4 * r + 1
    row0 = [x % n for x in _k4r1_row0(r)]
    return RotationSystem(n, tuple(tuple((x + i) % n for x in row0) for i in range(n)))


def expected_faces_k4r1(r: int) -> list[tuple[int, ...]]:
    """Face vertex sequences predicted for the K_{4r+1} scheme, one per i in Z_{4r+1}.

    Sequence ``i`` is the face through the directed edge (i, i+1).
    """
    if r < 1:
        raise ValidationError(f"r must be >= 1, got {r}")
    n = 4 * r + 1
    faces = []
    for i in range(n):
        seq: list[int] = []
        for k in range(1, r + 1):
            seq += [i, (2 * k - 1 + i) % n, (4 * k - 1 + i) % n, (2 * k + i) % n]
        faces.append(tuple(seq))
    return faces


# --- K_{4s}: the group (Z_2)^sigma x Z_t ----------------------------------


@dataclass(frozen=True)
class GroupElement:
    two_part: tuple[int, ...]
    cyc_part: int


@dataclass(frozen=True)
class Z2PowerTimesCyclic:
    sigma: int
    t: int

    def __post_init__(self) -> None:
        if self.t < 1 or self.t % 2 == 0:
            raise ValidationError(f"t must be odd and positive, got {self.t}")
        if self.sigma < 0:
            raise ValidationError("sigma must be non-negative")

    @classmethod
    def for_order(cls, n: int) -> Z2PowerTimesCyclic:
        sigma, t = 0, n
        while t % 2 == 0:
            t //= 2
            sigma += 1
        return cls(sigma, t)

    @property
    def order(self) -> int:
        return (1 << self.sigma) * self.t

    def label(self, g: GroupElement) -> int:
        bits = sum(b << i for i, b in enumerate(g.two_part))
        return g.cyc_part + self.t * bits

    def element(self, label: int) -> GroupElement:
        bits, cyc = divmod(label, self.t)
        return GroupElement(tuple((bits >> i) & 1 for i in range(self.sigma)), cyc)

    def add(self, x: int, y: int) -> int:
        bx, cx = divmod(x, self.t)
        by, cy = divmod(y, self.t)
        return (cx + cy) % self.t + self.t * (bx ^ by)

    def neg(self, x: int) -> int:
        bits, cyc = divmod(x, self.t)
        return (-cyc) % self.t + self.t * bits

    def involutions(self) -> list[int]:
        return [self.t * b for b in range(1, 1 << self.sigma)]

    def paired_elements(self) -> list[int]:
        """One element from each {x, -x} pair with x != -x, greedily by label."""
        taken: list[int] = []
        chosen: set[int] = set()
        for x in range(1, self.order):
            if x % self.t == 0:
                continue
            if self.neg(x) in chosen:
                continue
            chosen.add(x)
            taken.append(x)
        return taken


@dataclass(frozen=True)
class K4sScheme:
    """A generated K_n scheme (4 | n) with the choices that produced it."""

    group: Z2PowerTimesCyclic
    a_elements: tuple[int, ...]
    b_elements: tuple[int, ...]
    rotation: RotationSystem
    surface: SurfaceMap
    candidates_tried: int


def _k4s_row0(group: Z2PowerTimesCyclic, a: Sequence[int], b: Sequence[int]) -> list[int]:
    row = []
    for a1, a2 in zip(a[0::2], a[1::2]):
        row += [a1, group.neg(a2), group.neg(a1), a2]
    return row + list(b)


def _additive(group: Z2PowerTimesCyclic, row0: Sequence[int]) -> RotationSystem:
    n = group.order
    return RotationSystem(n, tuple(tuple(group.add(x, g) for x in row0) for g in range(n)))


def expected_face_k4s(group: Z2PowerTimesCyclic, a: Sequence[int], b: Sequence[int], g: int) -> tuple[int, ...]:
    """Predicted vertex sequence of the face through (g, g + a_1), or (g, g + b_1) without a-elements."""
    add = group.add
    seq: list[int] = []
    for a1, a2 in zip(a[0::2], a[1::2]):
        seq += [g, add(a1, g), add(add(a1, a2), g), add(a2, g)]
    partial = 0
    seq.append(g)
    for bl in b[:-1]:
        partial = add(partial, bl)
        seq.append(add(partial, g))
    return tuple(seq)


def _face_through(m: SurfaceMap, tail: int, head: int) -> tuple[int, ...]:
    for face in m.faces:
        for d in face.boundary:
            if d.tail == tail and d.head == head:
                return face.vertices
    raise ValidationError(f"no face contains ({tail}, {head})")


def validate_k4s(
    group: Z2PowerTimesCyclic, a: Sequence[int], b: Sequence[int], m: SurfaceMap
) -> list[str]:
    """Return a list of problems with a traced K_n scheme (empty when valid)."""
    n = group.order
    problems = []
    lengths = m.face_lengths()
    if len(lengths) != n or any(x != n - 1 for x in lengths):
        census: dict[int, int] = {}
        for x in lengths:
            census[x] = census.get(x, 0) + 1
        problems.append(f"face census {dict(sorted(census.items()))}, expected {{{n - 1}: {n}}}")
        return problems
    first = a[0] if a else b[0]
    for g in range(n):
        traced = _face_through(m, g, group.add(first, g))
        if not cyclic_equal(traced, expected_face_k4s(group, a, b, g)):
            problems.append(f"face through ({g}, {group.add(first, g)}) is {traced}")
            break
    if not faces_pairwise_adjacent(m):
        problems.append("faces are not pairwise adjacent along exactly one edge")
    if m.genus != complete_graph_genus(n):
        problems.append(f"genus {m.genus} != {complete_graph_genus(n)}")
    return problems


def scheme_k4s(n: int, budget: int = 5040) -> RotationSystem:
    """Validated additive rotation scheme for K_n, n divisible by 4 and n >= 8."""
    return build_k4s(n, budget).rotation


def build_k4s(n: int, budget: int = 5040) -> K4sScheme:
    """Build and validate the additive scheme for K_n, n divisible by 4 and n >= 8.

    The involutions start in label order; if validation fails the b-ordering
    is permuted, trying at most ``budget`` orderings in total.
    """
    if n % 4 or n < 8:
        raise ValidationError(f"n must be a multiple of 4 with n >= 8, got {n}")
    group = Z2PowerTimesCyclic.for_order(n)
    a = group.paired_elements()
    b = group.involutions()
    total = 0
    for bit in b:
        total = group.add(total, bit)
    assert total == 0, "involutions must sum to zero"
    assert len(a) == (1 << (group.sigma - 1)) * (group.t - 1)

    failures = []
    tried = 0
    for ordering in itertools.permutations(b):
        if tried >= budget:
            raise BudgetExhausted(
                f"K_{n}: budget of {budget} b-orderings exhausted"
                + (f"; first failure: {failures[0]}" if failures else "")
            )
        tried += 1
        rot = _additive(group, _k4s_row0(group, a, ordering))
        m = trace_faces(rot)
        problems = validate_k4s(group, a, ordering, m)
        if not problems:
            return K4sScheme(group, tuple(a), tuple(ordering), rot, m, tried)
        failures.append(problems[0])
    raise ValidationError(
        f"no valid b-ordering for K_{n} after {tried} candidates; first failure: "
        + (failures[0] if failures else "no candidates tried")
    )


def _faces_match(m: SurfaceMap, expected: Sequence[Sequence[int]], reverse: bool) -> bool:
    traced = [f.vertices[::-1] if reverse else f.vertices for f in m.faces]
    if len(traced) != len(expected):
        return False
    remaining = list(traced)
    for seq in expected:
        hit = next((i for i, t in enumerate(remaining) if cyclic_equal(t, seq)), None)
        if hit is None:
            return False
        remaining.pop(hit)
    return True


def face_oracle(rot: RotationSystem, m: SurfaceMap) -> bool | None:
    """Compare traced faces with the predicted face sequences.

    Applies when ``rot`` is one of the generated schemes or its mirror image
    (whose faces are the predicted ones read backwards). Returns ``None``
    when no prediction applies.
    """
    n = rot.vertex_count
    if n >= 5 and (n - 1) % 4 == 0:
        r = (n - 1) // 4
        scheme = scheme_k4r1(r)
        expected = expected_faces_k4r1(r)
    elif n >= 8 and n % 4 == 0:
        built = build_k4s(n)
        scheme = built.rotation
        expected = [
            expected_face_k4s(built.group, built.a_elements, built.b_elements, g) for g in range(n)
        ]
    else:
        return None
    if rot.same_cyclic_orders(scheme):
        return _faces_match(m, expected, reverse=False)
    if rot.same_cyclic_orders(scheme.mirror()):
        return _faces_match(m, expected, reverse=True)
    return None
