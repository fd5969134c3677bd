"""Plane-graph edge-chromatic toolkit: embedded planar graphs, exact
chromatic indices, criticality certificates, and discharging arguments
executed with exact rational arithmetic."""

from .graph import Graph
from .plane_graph import Face, PlaneGraph, from_rotations

__all__ = ["Face", "Graph", "PlaneGraph", "from_rotations"]
__version__ = "0.1.0"
