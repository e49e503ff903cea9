"""knotplate: polygonal templates and group presentations for knot/link diagrams."""

__version__ = "0.1.0"

from .diagram import (
    Diagram,
    FaceSet,
    ValidationReport,
    DiagramError,
    PDSyntaxError,
    InvalidDiagramError,
    parse_pd,
    serialize_pd,
    validate,
    faces,
    component_count,
    flip_crossing,
    mirror_diagram,
    is_alternating,
)
from .medial import MedialGraph, SkeinGraph, build_medial, skein_graph, graph_counts
from .fundgroup import (
    Presentation,
    ComplexityReport,
    AbelianInvariants,
    spanning_tree,
    template_presentation,
    wirtinger_presentation,
    complexity,
    tietze_simplify,
    abelianization,
    certify_unknot,
)
from .template import (
    TemplateComplex,
    PlanarLayout,
    Mesh,
    build_complex,
    complex_counts,
    layout,
    build_mesh,
    export_obj,
)
from .fixtures import FIXTURES, fixture_diagram, torus_knot_pd

__all__ = [
    "Diagram", "FaceSet", "ValidationReport",
    "DiagramError", "PDSyntaxError", "InvalidDiagramError",
    "parse_pd", "serialize_pd", "validate", "faces", "component_count",
    "flip_crossing", "mirror_diagram", "is_alternating",
    "MedialGraph", "SkeinGraph", "build_medial", "skein_graph", "graph_counts",
    "Presentation", "ComplexityReport", "AbelianInvariants",
    "spanning_tree", "template_presentation", "wirtinger_presentation",
    "complexity", "tietze_simplify", "abelianization", "certify_unknot",
    "TemplateComplex", "PlanarLayout", "Mesh",
    "build_complex", "complex_counts", "layout", "build_mesh", "export_obj",
    "FIXTURES", "fixture_diagram", "torus_knot_pd",
]
