"""polyvis: space-efficient visibility algorithms for simple polygons."""

from .geom_core import (CCW, COLLINEAR, CW, DegenerateInput,
                        InvariantViolation, Pt, Seg)
from .region import VisRegion, canonicalize, regions_equal
from .workspace import (AuxMeter, BudgetExceeded, MirroredView, PolygonBuffer,
                        PolygonView)

__all__ = [
    "Pt", "Seg", "CCW", "CW", "COLLINEAR",
    "DegenerateInput", "InvariantViolation", "BudgetExceeded",
    "AuxMeter", "PolygonView", "PolygonBuffer", "MirroredView",
    "VisRegion", "canonicalize", "regions_equal",
]
