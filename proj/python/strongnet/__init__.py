"""Strong dependency and conflict graphs of Boolean variability models."""

from ._core import (
    CnfFormula,
    Error,
    InvalidArgument,
    ParseError,
    StrongGraphs,
    VoidModelError,
    analyze,
    analyze_corpus,
    backbone,
    count_models,
    emit_dimacs,
    load_formula,
    median_and_coverage,
    oracle_relations,
    parse_dimacs,
    parse_fm,
    solve,
    spearman_rho,
    strong_graphs,
    strong_relations,
    validate,
    wilcoxon,
)

__all__ = [
    "CnfFormula",
    "Error",
    "InvalidArgument",
    "ParseError",
    "StrongGraphs",
    "VoidModelError",
    "analyze",
    "analyze_corpus",
    "backbone",
    "count_models",
    "emit_dimacs",
    "load_formula",
    "median_and_coverage",
    "oracle_relations",
    "parse_dimacs",
    "parse_fm",
    "solve",
    "spearman_rho",
    "strong_graphs",
    "strong_relations",
    "validate",
    "wilcoxon",
]
