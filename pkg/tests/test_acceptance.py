"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v``; the result lines
are written straight to the terminal so they also show up without ``-s``.
"""

from __future__ import annotations

import contextlib
import io
import random
import time

import pytest

import oracles
from embedkit import (
    FamilySpec,
    NonexistenceError,
    ValidationError,
    build_css,
    is_self_dual,
    min_distance,
    predicted_params,
    scheme_k4r1,
    scheme_k4s,
    search_self_dual_bipartite,
    trace_faces,
)
from embedkit.cli import main
from embedkit.css_code import equivalent_up_to_permutation
from embedkit.scheme_gen import Family
from embedkit.search import NONEXISTENT
from embedkit.surface_map import cyclic_equal
from embedkit.textio import read_matrix, read_rotation
from strategies import random_rotation_system


@pytest.fixture
def criterion(capsys):
    """Yield a recorder; on exit print ``criterion N: PASS|FAIL (...)``."""

    @contextlib.contextmanager
    def record(number: int, title: str, limit: float | None = None):
        start = time.perf_counter()
        status, detail = "FAIL", ""
        try:
            yield
            elapsed = time.perf_counter() - start
            if limit is not None and elapsed >= limit:
                detail = f"took {elapsed:.2f} s, limit {limit:g} s"
                raise AssertionError(detail)
            status = "PASS"
        except BaseException as exc:
            detail = detail or f"{type(exc).__name__}: {exc}".splitlines()[0]
            raise
        finally:
            elapsed = time.perf_counter() - start
            line = f"criterion {number} [{title}]: {status} ({elapsed:.2f} s)"
            if detail:
                line += f" {detail}"
            with capsys.disabled():
                print(f"\n{line}")

    return record


def _code_and_distance(m, cap):
    code = build_css(m)
    result = min_distance(code, cap=cap)
    return code, result


def test_criterion_1_k5_golden(criterion, data_dir):
    ref_hx = read_matrix(data_dir / "k5_reference_hx.gf2")
    ref_hz = read_matrix(data_dir / "k5_reference_hz.gf2")
    with criterion(1, "K_5 golden reproduction", limit=1.0):
        m = trace_faces(scheme_k4r1(1))
        code, result = _code_and_distance(m, cap=6)
        assert (code.n, code.k, result.d) == (10, 2, 3)
        assert (code.h_x @ code.h_z.transpose()).is_zero()
        assert equivalent_up_to_permutation(code.h_x, ref_hx) is not None
        assert equivalent_up_to_permutation(code.h_z, ref_hz) is not None


def test_criterion_2_k9_golden(criterion, data_dir):
    reference = read_rotation(data_dir / "k9_rotation.rot")
    faces = [tuple(map(int, ln.split())) for ln in (data_dir / "k9_faces.txt").read_text().splitlines()]
    with criterion(2, "K_9 golden reproduction", limit=10.0):
        rot = scheme_k4r1(2)
        assert rot.rotations == reference.rotations
        for i in range(9):
            assert rot.rotations[i] == tuple((x + i) % 9 for x in rot.rotations[0])
        m = trace_faces(rot)
        traced = [f.vertices for f in m.faces]
        assert len(traced) == len(faces) == 9
        for seq in faces:
            assert sum(cyclic_equal(t, seq) for t in traced) == 1
        code, result = _code_and_distance(m, cap=4)
        assert (code.n, code.k, result.d) == (36, 20, 3)
        assert result.certified


def test_criterion_3_k8(criterion):
    with criterion(3, "class II smallest instance K_8", limit=30.0):
        m = trace_faces(scheme_k4s(8))
        assert m.face_lengths() == [7] * 8
        assert m.genus == 7
        assert is_self_dual(m)
        code, result = _code_and_distance(m, cap=6)
        assert (code.n, code.k, result.d) == (28, 14, 3)
        p = predicted_params(FamilySpec.parse("class2:s=2"))
        assert (p.n, p.k, p.d) == (28, 14, 3)


def test_criterion_4_k44(criterion):
    with criterion(4, "K_{4,4} search", limit=300.0):
        outcome = search_self_dual_bipartite(4, 4)
        assert outcome
        m = outcome.surface
        assert m.genus == 1
        assert is_self_dual(m)
        code, result = _code_and_distance(m, cap=6)
        assert (code.n, code.k, result.d) == (16, 2, 4)
        assert result.certified and result.cap == 6


def _valid_instances(limit: int = 200):
    """Every family instance in its valid range with code length <= limit."""
    r = 1
    while 2 * r * (4 * r + 1) <= limit:
        yield f"class1:r={r}", (2 * r * (4 * r + 1), 2 * r * (4 * r - 3), 3)
        r += 1
    s = 2
    while 2 * s * (4 * s - 1) <= limit:
        yield f"class2:s={s}", (2 * s * (4 * s - 1), 2 * (s - 1) * (4 * s - 1), 3)
        s += 1
    for r in range(4, limit + 1, 4):
        for s in range(4, limit // r + 1, 4):
            if (r, s) != (6, 6):
                yield f"class3:r={r},s={s}", (r * s, (r - 2) * (s - 2) // 2, 4)
    for r in range(2, limit):
        for s in range(2, limit):
            n = (2 * r + 1) * s * s
            if n <= limit:
                yield f"class4:r={r},s={s}", (n, (r * s - 2) * (s - 1), 3)


def test_criterion_5_formula_table(criterion, k44_map):
    with criterion(5, "formula table"):
        table = list(_valid_instances())
        assert {FamilySpec.parse(t).family for t, _ in table} == set(Family)
        for text, expected in table:
            p = predicted_params(FamilySpec.parse(text))
            assert (p.n, p.k, p.d) == expected, text
        generated = {
            "class1:r=1": trace_faces(scheme_k4r1(1)),
            "class1:r=2": trace_faces(scheme_k4r1(2)),
            "class2:s=2": trace_faces(scheme_k4s(8)),
            "class3:r=4,s=4": k44_map,
        }
        for text, m in generated.items():
            p = predicted_params(FamilySpec.parse(text))
            code, result = _code_and_distance(m, cap=p.d + 1)
            assert (code.n, code.k) == (p.n, p.k), text
            assert result.certified and result.d == p.d, text


def test_criterion_6_oracle_equivalence(criterion, k44_map):
    with criterion(6, "oracle equivalence", limit=120.0):
        instances = {
            "K_5": trace_faces(scheme_k4r1(1)),
            "K_5 mirror": trace_faces(scheme_k4r1(1).mirror()),
            "K_{4,4}": k44_map,
            "K_8": trace_faces(scheme_k4s(8)),
        }
        rng = random.Random(2024)
        while len(instances) < 12:
            m = trace_faces(random_rotation_system(rng, 7, 0.5))
            if m.genus > 0:
                instances[f"random {len(instances)}"] = m
        for name, m in instances.items():
            code = build_css(m)
            hx, hz = oracles.to_array(code.h_x), oracles.to_array(code.h_z)
            assert max(oracles.kernel_dimension(hx), oracles.kernel_dimension(hz)) <= 22, name
            expected = oracles.brute_force_distance(hx, hz)
            result = min_distance(code, cap=code.n)
            assert result.d == expected, name


def test_criterion_7_property_suite(criterion):
    with criterion(7, "random rotation-system properties", limit=60.0):
        rng = random.Random(7)
        for _ in range(50):
            rot = random_rotation_system(rng, max_vertices=8, density=rng.choice([0.2, 0.5, 0.9]))
            m = trace_faces(rot)
            darts = sorted(d for f in m.faces for d in f.darts)
            assert darts == list(range(2 * m.num_edges))
            assert m.euler_char % 2 == 0
            code = build_css(m)
            assert code.k == 2 * m.genus
            assert (code.h_x @ code.h_z.transpose()).is_zero()


def test_criterion_8_nonexistence_and_usage(criterion, tmp_path):
    with criterion(8, "nonexistence and degenerate inputs"):
        assert search_self_dual_bipartite(6, 6).status == NONEXISTENT
        with pytest.raises(NonexistenceError):
            FamilySpec.parse("class3:r=6,s=6")
        for n in (5, 6, 7, 9, 10):
            with pytest.raises(ValidationError):
                scheme_k4s(n)
        for r in (0, -3):
            with pytest.raises(ValidationError):
                scheme_k4r1(r)
        for argv in (
            ["generate", "class3:r=6,s=6"],
            ["generate", "class1:r=0"],
            ["generate", "class2:s=1"],
            ["search", "6", "6"],
        ):
            out_file = tmp_path / "never.rot"
            code = main(argv + (["--out", str(out_file)] if argv[0] == "generate" else []), out=io.StringIO(), err=io.StringIO())
            assert code == 2, argv
            assert not out_file.exists()
