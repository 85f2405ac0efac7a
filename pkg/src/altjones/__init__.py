"""Jones invariants of alternating tangles in the oriented skein module."""

from .laurent import LaurentPoly
from .planar import PlanarArcDiagram
from .skein import SkeinElement
from .smoothing import OrientedSmoothing
from .tangle import TangleDiagram

__all__ = ["LaurentPoly", "OrientedSmoothing", "PlanarArcDiagram", "SkeinElement", "TangleDiagram"]
__version__ = "0.1.0"
