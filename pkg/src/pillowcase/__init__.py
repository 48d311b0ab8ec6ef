"""Immersed curves in the pillowcase, their A-infinity modules, and the
Floer pairing computed through the reduced dual bar resolution."""

from .algebra import AlgebraElement, DualPath, mul, mul_a
from .bar import build_bar, builtin_bar_r, certify_bar
from .curves import compile_text, compile_word, normalize, parse_word
from .f2linear import F2Matrix, homology_rank, rank
from .pairing import build_pairing, intersection_number, pair_rank
from .structures import (
    DDStructure,
    LeftModule,
    RightModule,
    direct_sum,
    dualize,
    iso_dd,
    reduce_dd,
    validate_ainfty,
    validate_dd,
)

__all__ = [
    "AlgebraElement",
    "DDStructure",
    "DualPath",
    "F2Matrix",
    "LeftModule",
    "RightModule",
    "build_bar",
    "build_pairing",
    "builtin_bar_r",
    "certify_bar",
    "compile_text",
    "compile_word",
    "direct_sum",
    "dualize",
    "homology_rank",
    "intersection_number",
    "iso_dd",
    "mul",
    "mul_a",
    "normalize",
    "pair_rank",
    "parse_word",
    "rank",
    "reduce_dd",
    "validate_ainfty",
    "validate_dd",
]
