from .syntax import (  # noqa: F401
    And,
    Atom,
    Formula,
    Implies,
    Not,
    Or,
    Prim,
    ParseError,
    format_formula,
    parse_formula,
    parse_interval_set,
)
