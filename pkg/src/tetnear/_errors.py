"""Exception types raised across the package."""


class MeshError(ValueError):
    """Base class for invalid mesh input.

    ``line`` is filled in by the parsers when the offending entity can be
    traced back to a line of text (1-based), and is ``None`` otherwise.
    """

    line = None

    def with_line(self, line):
        self.line = line
        return self

    def __str__(self):
        msg = super().__str__()
        if self.line is not None:
            return f"line {self.line}: {msg}"
        return msg


class IndexOutOfRange(MeshError):
    def __init__(self, elem, slot, index, n_node=None):
        self.elem = elem
        self.slot = slot
        self.index = index
        self.n_node = n_node
        bound = "" if n_node is None else f" (valid range 0..{n_node - 1})"
        super().__init__(
            f"element {elem} slot {slot} references node {index}{bound}"
        )


class DegenerateElement(MeshError):
    def __init__(self, elem, nodes=None):
        self.elem = elem
        self.nodes = nodes
        detail = "" if nodes is None else f" {tuple(nodes)}"
        super().__init__(f"element {elem}{detail} repeats a node index")


class NonFiniteCoordinate(MeshError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"node {node} has a NaN or infinite coordinate")


class MeshSyntaxError(MeshError):
    def __init__(self, line, reason):
        super().__init__(reason)
        self.line = line
        self.reason = reason


class UnsupportedVersion(MeshError):
    def __init__(self, version, line=None):
        self.version = version
        super().__init__(f"unsupported MSH format version {version!r}")
        self.line = line


class InvalidCount(ValueError):
    def __init__(self, shared):
        self.shared = shared
        super().__init__(f"shared-vertex count must be in 0..4, got {shared!r}")


class CapacityOverflow(OverflowError):
    def __init__(self, entries, dtype, limit):
        self.entries = entries
        self.dtype = dtype
        self.limit = limit
        super().__init__(
            f"{entries} incidence entries exceed the {dtype} index width "
            f"(max {limit})"
        )


class NodeOutOfRange(IndexError):
    def __init__(self, node, n_node):
        self.node = node
        self.n_node = n_node
        super().__init__(f"node {node} out of range for {n_node} nodes")


class ElemOutOfRange(IndexError):
    def __init__(self, elem, n_elem):
        self.elem = elem
        self.n_elem = n_elem
        if n_elem:
            rng = f"valid range 0..{n_elem - 1}"
        else:
            rng = "mesh has no elements"
        super().__init__(f"element {elem} out of range ({rng})")


class IncidenceMeshMismatch(ValueError):
    def __init__(self, inc_shape, mesh_shape):
        self.inc_shape = inc_shape
        self.mesh_shape = mesh_shape
        super().__init__(
            "incidence map was built for (n_node, n_elem)="
            f"{inc_shape}, mesh has {mesh_shape}"
        )


class GenerationStalled(RuntimeError):
    def __init__(self, elem, attempts):
        self.elem = elem
        self.attempts = attempts
        super().__init__(
            f"random mesh generation stalled at element {elem} after "
            f"{attempts} consecutive rejected draws; valence budget infeasible"
        )
