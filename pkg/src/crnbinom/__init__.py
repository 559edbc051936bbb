"""Decide unconditional binomiality of mass-action steady-state ideals."""

from .engine import (
    BinomialityReport,
    Verdict,
    VerdictKind,
    analyze,
    build_binomial_matrix,
    build_irreversible_matrix,
    test_general,
    test_reversible,
)
from .network import Complex, Reaction, ReactionNetwork, Species, build_network, validate
from .parser import CRNParseError, ParseError, format_network, parse_network, read_network

__all__ = [
    "BinomialityReport",
    "CRNParseError",
    "Complex",
    "ParseError",
    "Reaction",
    "ReactionNetwork",
    "Species",
    "Verdict",
    "VerdictKind",
    "analyze",
    "build_binomial_matrix",
    "build_irreversible_matrix",
    "build_network",
    "format_network",
    "parse_network",
    "read_network",
    "test_general",
    "test_reversible",
    "validate",
]
