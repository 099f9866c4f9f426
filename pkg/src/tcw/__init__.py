"""Theory-combination workbench: minimal models, finite witnesses and the
eight combination properties for many-sorted theories given by their
cardinality spectra."""
from .cardinality import INF, CardSet, Spectrum, dickson_minimal
from .errors import BudgetExceeded, OracleExhausted, ParseError, SortError, TcwError, TheoryError, WitnessError
from .logic import Signature, evaluate, flatten_unary, parse_formula, to_text
from .minmod import is_sat, minmod, minmod_via_transfer
from .oracle import oracle_entails, oracle_minmod, oracle_sat
from .properties import PROPERTIES, check_property, property_profile
from .theories import TheoryDef, apply_operator, catalog_lookup, resolve_theory
from .verdict import Verdict
from .witness import build_witness, validate_witness

__version__ = "0.1.0"

__all__ = [
    "INF",
    "CardSet",
    "Spectrum",
    "dickson_minimal",
    "BudgetExceeded",
    "OracleExhausted",
    "ParseError",
    "SortError",
    "TcwError",
    "TheoryError",
    "WitnessError",
    "Signature",
    "evaluate",
    "flatten_unary",
    "parse_formula",
    "to_text",
    "is_sat",
    "minmod",
    "minmod_via_transfer",
    "oracle_entails",
    "oracle_minmod",
    "oracle_sat",
    "PROPERTIES",
    "check_property",
    "property_profile",
    "TheoryDef",
    "apply_operator",
    "catalog_lookup",
    "resolve_theory",
    "Verdict",
    "build_witness",
    "validate_witness",
]
