"""Interval decompositions of integer zigzag persistence modules."""

from .colimit import check_all, check_pair, colimit_presentation, interval_colimit_oracle
from .decompose import (
    DecompOutcome,
    decompose,
    extend_summand,
    peak_split,
    refine_to_rank_one,
)
from .generate import gen_adversarial, gen_decomposable, random_unimodular
from .linalg import IntMatrix
from .persmod import Barcode, Decomposition, PersModule, Submodule, interval_module
from .poset import BWD, FWD, Interval, ZigzagShape, make_shape, parse_shape_spec
from .verify import barcode_of, barcodes_equal, verify_decomposition

__all__ = [
    "BWD", "FWD", "Interval", "ZigzagShape", "make_shape", "parse_shape_spec",
    "IntMatrix", "PersModule", "Submodule", "Decomposition", "Barcode", "interval_module",
    "check_all", "check_pair", "colimit_presentation", "interval_colimit_oracle",
    "DecompOutcome", "decompose", "peak_split", "extend_summand", "refine_to_rank_one",
    "verify_decomposition", "barcode_of", "barcodes_equal",
    "gen_decomposable", "gen_adversarial", "random_unimodular",
]
