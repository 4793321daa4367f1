"""Exact fault-tree analysis: unreliability, coherence, minimal cut sets and
component importance measures."""

from .casestudy import load_casestudy
from .coherence import CoherenceReport, check_boundaries, check_monotone, check_relevance, coherence_report
from .cutset import CutSetForm, evaluate_cutsets, minimal_cut_sets, minimize, to_cutsets
from .errors import FaultTreeError
from .importance import (
    ImportanceReport,
    Measure,
    Orientation,
    RelativeComparison,
    birnbaum,
    fussell_vesely,
    importance_report,
    mixed_second,
    permutation_equivalent,
    rank,
    raw,
    relative_compare,
    rrw,
)
from .model import And, Atomic, BasicEvent, FaultTree, Not, Or, State, all_states, build_tree, nand, nor, xor
from .montecarlo import McConfig, McEstimate, estimate_criticality, estimate_unreliability
from .parser import ParseError, load_ftdl, parse_ftdl, serialize_ftdl
from .prob import (
    and_prob,
    exp_cdf,
    nand_prob,
    nor_prob,
    or_prob,
    pie_probability,
    probability,
    system_unreliability,
    xor_prob,
)
from .structure import ForcedTree, force, oracle_probability, phi, truth_table

__version__ = "0.1.0"

__all__ = [
    "all_states",
    "And",
    "and_prob",
    "Atomic",
    "BasicEvent",
    "birnbaum",
    "build_tree",
    "check_boundaries",
    "check_monotone",
    "check_relevance",
    "coherence_report",
    "CoherenceReport",
    "CutSetForm",
    "estimate_criticality",
    "estimate_unreliability",
    "evaluate_cutsets",
    "exp_cdf",
    "FaultTree",
    "FaultTreeError",
    "force",
    "ForcedTree",
    "fussell_vesely",
    "importance_report",
    "ImportanceReport",
    "load_casestudy",
    "load_ftdl",
    "McConfig",
    "McEstimate",
    "Measure",
    "minimal_cut_sets",
    "minimize",
    "mixed_second",
    "nand",
    "nand_prob",
    "nor",
    "nor_prob",
    "Not",
    "Or",
    "or_prob",
    "oracle_probability",
    "Orientation",
    "parse_ftdl",
    "ParseError",
    "permutation_equivalent",
    "phi",
    "pie_probability",
    "probability",
    "rank",
    "raw",
    "relative_compare",
    "RelativeComparison",
    "rrw",
    "serialize_ftdl",
    "State",
    "system_unreliability",
    "to_cutsets",
    "truth_table",
    "xor",
    "xor_prob",
]
