"""Locally repairable erasure codes from punctured low-degree polynomial
evaluations over prime fields.

The toolkit builds two code families: a locality-2 family from degree-1
polynomials (any lost symbol is recoverable from 2 survivors on a stored
line) and a locality-3 family from degree-2 polynomials (3 survivors),
plus exact finite-field linear algebra, brute-force verification tools, a
failure/repair simulator, and a CLI.
"""

from . import errors
from .evalset import Codeword, EvaluationSet, Line, PairSet, RepairResult
from .gf import FieldElement, Matrix, PrimeField, complete_to_basis
from .inner import (
    CodeProfile,
    InnerCode,
    decode_codeword,
    dual_min_distance,
    make_explicit_code,
    make_mds_code,
    search_constrained_code,
    weight_profile,
)
from .lrc2 import (
    LrcCode,
    build_lrc2,
    brute_force_distance2,
    cooperative_repair2,
    decode_global2,
    encode2,
    locality_witness2,
    make_systematic2,
    params_report2,
    repair2,
)
from .lrc3 import (
    Lrc3Code,
    build_lrc3,
    brute_force_distance3,
    cooperative_repair3,
    decode_global3,
    encode3,
    locality_witness3,
    monomial_index,
    params_report3,
    repair3,
)
from .mpoly import (
    MultiPoly,
    UniPoly,
    interpolate_univariate,
    poly_from_gradient,
    restrict_to_line,
)
from .rm import (
    RMCode,
    brute_force_min_distance,
    enumerate_min_weight_words,
    min_weight_dual_codeword,
    rm_dimension,
    rm_dual_code,
    rm_dual_degree,
    rm_encode,
    rm_min_distance,
    support_is_collinear,
)
from .sim import Cluster, auto_repair, inject_failures, place, stats_report

__version__ = "0.1.0"

__all__ = [
    "Cluster",
    "CodeProfile",
    "Codeword",
    "EvaluationSet",
    "FieldElement",
    "InnerCode",
    "Line",
    "Lrc3Code",
    "LrcCode",
    "Matrix",
    "MultiPoly",
    "PairSet",
    "PrimeField",
    "RMCode",
    "RepairResult",
    "UniPoly",
    "auto_repair",
    "brute_force_distance2",
    "brute_force_distance3",
    "brute_force_min_distance",
    "build_lrc2",
    "build_lrc3",
    "complete_to_basis",
    "cooperative_repair2",
    "cooperative_repair3",
    "decode_codeword",
    "decode_global2",
    "decode_global3",
    "dual_min_distance",
    "encode2",
    "encode3",
    "enumerate_min_weight_words",
    "errors",
    "inject_failures",
    "interpolate_univariate",
    "locality_witness2",
    "locality_witness3",
    "make_explicit_code",
    "make_mds_code",
    "make_systematic2",
    "min_weight_dual_codeword",
    "monomial_index",
    "params_report2",
    "params_report3",
    "place",
    "poly_from_gradient",
    "repair2",
    "repair3",
    "restrict_to_line",
    "rm_dimension",
    "rm_dual_code",
    "rm_dual_degree",
    "rm_encode",
    "rm_min_distance",
    "search_constrained_code",
    "stats_report",
    "support_is_collinear",
    "weight_profile",
]
