"""Odd nilHecke operators, q-deformed divided differences and NSym^q pairings."""

from .errors import (ConfigMismatchError, DivisibilityError, IndexRangeError, ModeError,
                     ModulusError, OddHeckeError, ParseError, UnitError)
from .nsymq import NSymElement, TensorElement, coproduct, elementary_e, pairing
from .parsing import parse_nsym, parse_operator, parse_poly
from .scalars import ParamScalar, gaussian_binomial, q_power, scalar
from .skewring import ODD, QMODE, RingConfig, SkewPoly
from .verify import EvalContext, RelationReport, check_zero, eval_expr, run_suite

__version__ = "0.1.0"

__all__ = [
    "ConfigMismatchError", "DivisibilityError", "IndexRangeError", "ModeError", "ModulusError",
    "OddHeckeError", "ParseError", "UnitError",
    "NSymElement", "TensorElement", "coproduct", "elementary_e", "pairing",
    "parse_nsym", "parse_operator", "parse_poly",
    "ParamScalar", "gaussian_binomial", "q_power", "scalar",
    "ODD", "QMODE", "RingConfig", "SkewPoly",
    "EvalContext", "RelationReport", "check_zero", "eval_expr", "run_suite",
]
