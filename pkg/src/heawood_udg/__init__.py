"""Unit-distance embeddings of the Heawood graph.

The Heawood graph is the point-line incidence graph of the Fano plane:
14 vertices, 21 edges, 3-regular, girth 6.  This package constructs its
unit-distance embeddings in the plane from a compass-and-ruler chain over
a pinned rectangle, finds all eleven real embeddings at arbitrary working
precision, certifies each one against the exact degree-79 coordinate
polynomial via Sturm sequences, and renders the results as SVG.
"""

from .chain import (
    BranchVector,
    ChainBroken,
    EmbeddingCandidate,
    build_chain,
    candidate_from_coords,
    closure_residual,
    equation_registry,
    place_l4,
)
from .charpoly import (
    BigPoly,
    IsolatingInterval,
    NotSquarefree,
    charpoly_xl4,
    count_real_roots,
    eval_exact,
    isolate_real_roots,
    refine_root,
)
from .geom import (
    ConcentricCircles,
    NoIntersection,
    Point2,
    RealContext,
    Tangent,
    circle_circle_intersect,
)
from .incidence import (
    IncidenceStructure,
    VertexLabel,
    build_heawood_incidence,
    girth,
    verify_fano_axioms,
)
from .refdata import reference_tables
from .render import RenderStyle, render_svg
from .solver import (
    Bracket,
    LostBracket,
    NoConvergence,
    SingularJacobian,
    SolveConfig,
    newton_polish,
    refine_bracket,
    solve_all,
    sweep,
)
from .verify import Certificate, certify, flag_residuals, regularity_check

__version__ = "0.1.0"

__all__ = [
    "BigPoly",
    "BranchVector",
    "Bracket",
    "Certificate",
    "ChainBroken",
    "ConcentricCircles",
    "EmbeddingCandidate",
    "IncidenceStructure",
    "IsolatingInterval",
    "LostBracket",
    "NoConvergence",
    "NoIntersection",
    "NotSquarefree",
    "Point2",
    "RealContext",
    "RenderStyle",
    "SingularJacobian",
    "SolveConfig",
    "Tangent",
    "VertexLabel",
    "build_chain",
    "build_heawood_incidence",
    "candidate_from_coords",
    "certify",
    "charpoly_xl4",
    "circle_circle_intersect",
    "closure_residual",
    "count_real_roots",
    "equation_registry",
    "eval_exact",
    "flag_residuals",
    "girth",
    "isolate_real_roots",
    "newton_polish",
    "place_l4",
    "reference_tables",
    "refine_bracket",
    "refine_root",
    "regularity_check",
    "render_svg",
    "solve_all",
    "sweep",
    "verify_fano_axioms",
]
