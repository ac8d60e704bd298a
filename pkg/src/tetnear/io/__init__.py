"""Mesh and report file formats, plus the seeded mesh generator."""

from pathlib import Path

from .generate import generate_random_mesh
from .msh import parse_msh22
from .native import parse_native, render_native
from .report import parse_report, render_line, render_report, render_table, write_report

__all__ = [
    "generate_random_mesh",
    "parse_msh22",
    "parse_native",
    "render_native",
    "parse_report",
    "render_line",
    "render_report",
    "render_table",
    "write_report",
    "detect_format",
    "load_mesh",
]

FORMATS = ("native", "msh22")


def detect_format(path):
    if path is not None and Path(str(path)).suffix.lower() == ".msh":
        return "msh22"
    return "native"


def load_mesh(text, fmt="native", permissive=False):
    """Parse ``text`` in the given format and return ``(mesh, n_skipped)``."""
    if fmt == "msh22":
        return parse_msh22(text, permissive=permissive)
    if fmt == "native":
        return parse_native(text, permissive=permissive), 0
    raise ValueError(f"unknown mesh format {fmt!r}")
