"""Euler-Mahonian statistics on colored permutation groups and their lattice-point generating functions."""
from ._kernels import BACKEND
from .colored_perm import (
    ColoredPermutation,
    GroupSpec,
    compose,
    decompose,
    enumerate_group,
    format_window,
    inverse,
    parse_window,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ColoredPermutation",
    "GroupSpec",
    "compose",
    "decompose",
    "enumerate_group",
    "format_window",
    "inverse",
    "parse_window",
]
