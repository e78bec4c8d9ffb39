"""Exact engine for purely real Welschinger and genus zero Gromov-Witten
invariants of real del Pezzo surfaces of degree two, computed through
Caporaso-Harris style recursions on a nodal degeneration."""

from .abv import InvariantRequest, NeedsSeedError, Session
from .config import builtin_presets, load_config_dir, parse_class
from .engine import DiskCache, Engine

__all__ = [
    "DiskCache",
    "Engine",
    "InvariantRequest",
    "NeedsSeedError",
    "Session",
    "builtin_presets",
    "load_config_dir",
    "parse_class",
]

__version__ = "0.1.0"
