"""Self-dual orientable embeddings of complete graphs and their surface codes."""

from .css_code import (
    CssCode,
    DistanceResult,
    build_css,
    face_edge_matrix,
    min_distance,
    vertex_edge_matrix,
)
from .errors import (
    BudgetExhausted,
    EmbedkitError,
    FormatError,
    InconsistencyError,
    NonexistenceError,
    OrthogonalityError,
    ValidationError,
)
from .gf2 import BinaryMatrix, gf2_rank, kernel_basis, row_space_contains
from .scheme_gen import (
    Family,
    FamilySpec,
    PredictedParams,
    expected_faces_k4r1,
    predicted_params,
    scheme_k4r1,
    scheme_k4s,
)
from .search import SearchOutcome, search_self_dual_bipartite
from .surface_map import (
    DirectedEdge,
    FaceWalk,
    RotationSystem,
    SurfaceMap,
    dual_map,
    genus_of,
    is_self_dual,
    trace_faces,
)

__version__ = "0.1.0"
