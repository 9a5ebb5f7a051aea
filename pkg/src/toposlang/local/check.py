"""Type inference, substitution and connective desugaring for the local language.

`infer_type` is deterministic and total on well-formed ASTs; failures raise
`LsTypeError` carrying the offending subterm.  `substitute` is
capture-avoiding: comprehension binders are renamed when the replacement
would capture.  `desugar_connectives` eliminates the surface constant
`true` into `* = *` and conjunction into equality of pairs of truth values,
after which terms consist of core formers only.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from ..errors import ToposlangError
from .syntax import (
    STAR,
    AndT,
    App,
    Compr,
    Eq,
    In,
    Proj,
    Signature,
    Star,
    Term,
    TrueLit,
    Tup,
    Var,
    format_term,
)
from .types import OMEGA, UNIT, PowerType, ProductType, TypeExpr


@dataclass
class LsTypeError(ToposlangError):
    subterm: Term
    message: str

    def __str__(self):
        return f"{self.message} (in {format_term(self.subterm)})"


def infer_type(term: Term, context: Mapping[str, TypeExpr] | None = None,
               signature: Optional[Signature] = None) -> TypeExpr:
    """Unique type of a term under a free-variable context."""
    ctx = dict(context or {})

    def walk(n: Term, env: dict) -> TypeExpr:
        if isinstance(n, Star):
            return UNIT
        if isinstance(n, TrueLit):
            return OMEGA
        if isinstance(n, Var):
            from_env = env.get(n.name)
            if n.vtype is not None:
                if from_env is not None and from_env != n.vtype:
                    raise LsTypeError(n, f"variable {n.name!r} annotated {n.vtype} "
                                         f"but bound at {from_env}")
                return n.vtype
            if from_env is None:
                raise LsTypeError(n, f"unbound variable {n.name!r}")
            return from_env
        if isinstance(n, App):
            if signature is None or n.symbol not in signature.symbols:
                raise LsTypeError(n, f"unknown function symbol {n.symbol!r}")
            dom, cod = signature.symbols[n.symbol]
            got = walk(n.arg, env)
            if got != dom:
                raise LsTypeError(n, f"symbol {n.symbol!r} expects {dom}, got {got}")
            return cod
        if isinstance(n, Tup):
            if len(n.items) < 2:
                raise LsTypeError(n, "tuples need at least two components")
            return ProductType(tuple(walk(t, env) for t in n.items))
        if isinstance(n, Proj):
            inner = walk(n.item, env)
            if not isinstance(inner, ProductType):
                raise LsTypeError(n, f"projection from non-product type {inner}")
            if not 1 <= n.index <= len(inner.factors):
                raise LsTypeError(n, f"projection index {n.index} out of range "
                                     f"for {inner}")
            return inner.factors[n.index - 1]
        if isinstance(n, Compr):
            if n.var.vtype is None:
                raise LsTypeError(n, "comprehension binder needs a type annotation")
            body_env = dict(env)
            body_env[n.var.name] = n.var.vtype
            body_t = walk(n.body, body_env)
            if body_t != OMEGA:
                raise LsTypeError(n, f"comprehension body must be a formula, got {body_t}")
            return PowerType(n.var.vtype)
        if isinstance(n, Eq):
            lt, rt = walk(n.left, env), walk(n.right, env)
            if lt != rt:
                raise LsTypeError(n, f"equality between different types {lt} and {rt}")
            return OMEGA
        if isinstance(n, In):
            et, ct = walk(n.element, env), walk(n.container, env)
            if ct != PowerType(et):
                raise LsTypeError(n, f"membership needs container of type P({et}), got {ct}")
            return OMEGA
        if isinstance(n, AndT):
            for side in (n.left, n.right):
                got = walk(side, env)
                if got != OMEGA:
                    raise LsTypeError(n, f"conjunction operand has type {got}, not Omega")
            return OMEGA
        raise LsTypeError(n, f"unknown term former {type(n).__name__}")

    return walk(term, ctx)


def free_vars(term: Term) -> dict[str, set]:
    """Free variable names with the annotation types seen on them."""
    out: dict[str, set] = {}

    def walk(n: Term, bound: frozenset):
        if isinstance(n, Var):
            if n.name not in bound:
                out.setdefault(n.name, set()).add(n.vtype)
        elif isinstance(n, App):
            walk(n.arg, bound)
        elif isinstance(n, Tup):
            for t in n.items:
                walk(t, bound)
        elif isinstance(n, Proj):
            walk(n.item, bound)
        elif isinstance(n, Compr):
            walk(n.body, bound | {n.var.name})
        elif isinstance(n, (Eq, AndT)):
            walk(n.left, bound)
            walk(n.right, bound)
        elif isinstance(n, In):
            walk(n.element, bound)
            walk(n.container, bound)

    walk(term, frozenset())
    return out


def _fresh(base: str, taken: set[str]) -> str:
    i = 1
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"


def rename_binder(node: Compr, new_name: str) -> Compr:
    new_var = Var(new_name, node.var.vtype)
    return Compr(new_var, substitute(node.body, node.var.name, new_var))


def substitute(term: Term, var_name: str, replacement: Term) -> Term:
    """Replace free occurrences of a variable, renaming binders that would
    capture free variables of the replacement."""
    repl_free = set(free_vars(replacement))

    def walk(n: Term) -> Term:
        if isinstance(n, Var):
            return replacement if n.name == var_name else n
        if isinstance(n, (Star, TrueLit)):
            return n
        if isinstance(n, App):
            return App(n.symbol, walk(n.arg))
        if isinstance(n, Tup):
            return Tup(tuple(walk(t) for t in n.items))
        if isinstance(n, Proj):
            return Proj(n.index, walk(n.item))
        if isinstance(n, Compr):
            if n.var.name == var_name:
                return n  # occurrences below are bound, not free
            if n.var.name in repl_free:
                taken = repl_free | set(free_vars(n.body)) | {var_name}
                n = rename_binder(n, _fresh(n.var.name, taken))
            return Compr(n.var, walk(n.body))
        if isinstance(n, Eq):
            return Eq(walk(n.left), walk(n.right))
        if isinstance(n, In):
            return In(walk(n.element), walk(n.container))
        if isinstance(n, AndT):
            return AndT(walk(n.left), walk(n.right))
        raise TypeError(f"not a term node: {n!r}")

    return walk(term)


def alpha_normal(term: Term) -> Term:
    """Rename binders to a canonical scheme; alpha-equal terms coincide."""
    counter = [0]

    def walk(n: Term, env: Mapping[str, str]) -> Term:
        if isinstance(n, Var):
            return Var(env.get(n.name, n.name), n.vtype)
        if isinstance(n, (Star, TrueLit)):
            return n
        if isinstance(n, App):
            return App(n.symbol, walk(n.arg, env))
        if isinstance(n, Tup):
            return Tup(tuple(walk(t, env) for t in n.items))
        if isinstance(n, Proj):
            return Proj(n.index, walk(n.item, env))
        if isinstance(n, Compr):
            counter[0] += 1
            fresh = f"%{counter[0]}"
            inner = dict(env)
            inner[n.var.name] = fresh
            return Compr(Var(fresh, n.var.vtype), walk(n.body, inner))
        if isinstance(n, Eq):
            return Eq(walk(n.left, env), walk(n.right, env))
        if isinstance(n, In):
            return In(walk(n.element, env), walk(n.container, env))
        if isinstance(n, AndT):
            return AndT(walk(n.left, env), walk(n.right, env))
        raise TypeError(f"not a term node: {n!r}")

    return walk(term, {})


def alpha_equal(a: Term, b: Term) -> bool:
    return alpha_normal(a) == alpha_normal(b)


CORE_TRUE = Eq(STAR, STAR)


def desugar_connectives(term: Term) -> Term:
    """Eliminate surface connectives: true becomes * = *, and conjunction
    becomes equality of the pair with the pair of truths.  Idempotent."""
    def walk(n: Term) -> Term:
        if isinstance(n, TrueLit):
            return CORE_TRUE
        if isinstance(n, AndT):
            return Eq(Tup((walk(n.left), walk(n.right))), Tup((CORE_TRUE, CORE_TRUE)))
        if isinstance(n, (Var, Star)):
            return n
        if isinstance(n, App):
            return App(n.symbol, walk(n.arg))
        if isinstance(n, Tup):
            return Tup(tuple(walk(t) for t in n.items))
        if isinstance(n, Proj):
            return Proj(n.index, walk(n.item))
        if isinstance(n, Compr):
            return Compr(n.var, walk(n.body))
        if isinstance(n, Eq):
            return Eq(walk(n.left), walk(n.right))
        if isinstance(n, In):
            return In(walk(n.element), walk(n.container))
        raise TypeError(f"not a term node: {n!r}")

    return walk(term)
