"""Case-law reasoning over propositional logic.

Formulas are strings (``"a & !b -> c"``), databases are ``Database`` objects
loaded from JSON documents.
"""

from ._core import (
    CaselawError,
    Database,
    InconsistentDatabaseError,
    ModelError,
    ParseError,
    ReservedNameError,
    SizeLimitError,
    UnknownCourtError,
    entails,
    is_satisfiable,
    normalize_formula,
    qbf_to_database,
    solve_qbf,
)

__all__ = [
    "CaselawError",
    "Database",
    "InconsistentDatabaseError",
    "ModelError",
    "ParseError",
    "ReservedNameError",
    "SizeLimitError",
    "UnknownCourtError",
    "entails",
    "is_satisfiable",
    "normalize_formula",
    "qbf_to_database",
    "solve_qbf",
]
