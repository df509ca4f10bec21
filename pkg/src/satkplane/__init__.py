"""Construction and verification of saturated k-plane drawings."""

from .mode import Mode, Simplicity, UNRESTRICTED, NOSELF, SIMPLE, lsimple
from .planar import (Planarization, DrawingStats, CrossingProfile,
                     build_planarization, euler_audit, crossing_profile,
                     check_k_plane, check_simplicity, lb_any, lb_noself,
                     MapError, BadCrossing, BrokenChain, DanglingSegment,
                     NonSpherical, BadEmbedding)

__all__ = [
    "Mode", "Simplicity", "UNRESTRICTED", "NOSELF", "SIMPLE", "lsimple",
    "Planarization", "DrawingStats", "CrossingProfile",
    "build_planarization", "euler_audit", "crossing_profile",
    "check_k_plane", "check_simplicity", "lb_any", "lb_noself",
    "MapError", "BadCrossing", "BrokenChain", "DanglingSegment",
    "NonSpherical", "BadEmbedding",
]

__version__ = "0.1.0"
