from .types import (  # noqa: F401
    OMEGA,
    RQ,
    SIGMA,
    UNIT,
    GroundType,
    PowerType,
    ProductType,
    TypeExpr,
    product_type,
)
from .syntax import (  # noqa: F401
    STAR,
    TRUE,
    AndT,
    App,
    Compr,
    Eq,
    In,
    LsParseError,
    Proj,
    Signature,
    Star,
    Term,
    TrueLit,
    Tup,
    Var,
    format_term,
    parse_term,
    parse_type,
)
from .check import (  # noqa: F401
    LsTypeError,
    alpha_equal,
    desugar_connectives,
    free_vars,
    infer_type,
    substitute,
)
from .axioms import (  # noqa: F401
    AxiomPack,
    DerivationLine,
    Sequent,
    abelian_axiom_pack,
    check_derivation,
    is_axiom_instance,
    lset_intersection,
    pack_signature,
)
