"""Exception types shared across the package."""


class TrussError(Exception):
    """Base class for all structured failures raised by trusskit."""


class DomainError(TrussError):
    """Mismatched sources, targets or ambient ordinals."""


class DiagramError(TrussError):
    """Diagram data is not a functor (missing, extra or incoherent assignments)."""


class LabelingError(TrussError):
    """Label data is not a functor into the label category."""


class ClassificationError(TrussError):
    """A poset handed to classify is not the total space of any bundle."""


class CompositionError(TrussError):
    """Bordism endpoints do not match."""


class PackingError(TrussError):
    """pack/unpack received data of the wrong shape."""


class MeshError(TrussError):
    """Mesh data violates strict monotonicity or does not glue."""


class SectionError(TrussError):
    """A stratum section is discontinuous over some covering relation."""


class LayoutError(TrussError):
    """Layout requested for an unsupported tower shape."""


class ParseError(TrussError):
    """A file could not be parsed into a known schema."""


class InternalError(TrussError):
    """An invariant that should be unreachable was violated."""
