from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from embedkit import RotationSystem, scheme_k4r1, scheme_k4s, search_self_dual_bipartite, trace_faces

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def k3_map():
    return trace_faces(RotationSystem(3, ((1, 2), (2, 0), (0, 1))))


@pytest.fixture(scope="session")
def k5_map():
    return trace_faces(scheme_k4r1(1))


@pytest.fixture(scope="session")
def k5_reference_map():
    return trace_faces(
        RotationSystem(5, ((2, 4, 3, 1), (3, 0, 4, 2), (4, 1, 0, 3), (0, 2, 1, 4), (1, 3, 2, 0)))
    )


@pytest.fixture(scope="session")
def k9_map():
    return trace_faces(scheme_k4r1(2))


@pytest.fixture(scope="session")
def k8_map():
    return trace_faces(scheme_k4s(8))


@pytest.fixture(scope="session")
def k44_map():
    outcome = search_self_dual_bipartite(4, 4)
    assert outcome
    return outcome.surface
