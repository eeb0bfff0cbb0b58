"""Sequent calculi for linear and classical logics: checking, translation, cut elimination and search."""

from ._core import (
    CheckReport,
    CommuteResult,
    CutElimError,
    Formula,
    LanguageError,
    ParseError,
    Proof,
    ProofParseError,
    SearchResult,
    Sequent,
    TractabilityReport,
    TranslationError,
    calc_logic,
    check,
    commute,
    cutelim,
    embed,
    parse_formula,
    parse_proof,
    parse_sequent,
    search,
    tractable,
    translate,
    translate_formula,
)

__all__ = [name for name in dir() if not name.startswith("_")]
