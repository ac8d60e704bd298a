"""Node-to-element incidence and near-element queries for tetrahedral meshes."""

from ._errors import (
    CapacityOverflow,
    DegenerateElement,
    ElemOutOfRange,
    GenerationStalled,
    IncidenceMeshMismatch,
    IndexOutOfRange,
    InvalidCount,
    MeshError,
    MeshSyntaxError,
    NodeOutOfRange,
    NonFiniteCoordinate,
    UnsupportedVersion,
)
from .adjacency import (
    BuildStrategy,
    IncidenceMap,
    NeighborReport,
    all_near,
    build_incidence,
    elements_of_node,
    near_elements,
    near_elements_classified,
)
from .mesh import Mesh, Nearness, classify_nearness, shared_vertex_count, validate_mesh

__version__ = "0.1.0"
