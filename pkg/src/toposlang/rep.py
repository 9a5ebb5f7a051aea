"""Representations of the typed language in a presheaf-topos backend.

A representation assigns presheaves to the ground types and natural
transformations to the function symbols; types are interpreted structurally
(products as products, power types as power objects, the truth type as the
classifier, the unit type as the terminal object) and terms compositionally
as arrows out of the product of their free-variable context.

Equality lands on the classifier through the sieve of arrows equalizing the
two sides; membership applies the evaluation cell of the power object; and
comprehension builds the power transpose directly.  Every registered axiom
sequent must hold, which for an empty context means its interpretation is
the constant arrow at the principal sieve.

The one-object backend gives classical set semantics.  A finite-state
system with rational value tables becomes such a representation through
`EffectiveClassicalRep`, which keeps interval arguments intensional: the
quantity-value stage holds the attained values only, and an interval set
denotes the power-object element deciding membership against them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ._canon import canon_key, canon_sorted
from .category import FiniteCategory, one_object_category, principal_sieve
from .errors import InputError, ToposlangError
from .intervals import IntervalSet
from .local.axioms import Sequent
from .local.check import desugar_connectives, free_vars, infer_type
from .local.syntax import (
    App,
    Compr,
    Eq,
    In,
    Proj,
    Signature,
    Star,
    Term,
    Tup,
    Var,
)
from .local.types import (
    RQ,
    SIGMA,
    GroundType,
    PowerType,
    ProductType,
    QuantityType,
    StateType,
    TruthType,
    TypeExpr,
    UnitType,
)
from .presheaf import (
    NatTransform,
    Presheaf,
    classifier_kit,
    power_object,
    power_transpose,
    product_many,
    validate_nat,
    validate_presheaf,
)
from .prop.semantics import ClassicalSystem


class RepresentationError(ToposlangError):
    pass


class FaithfulnessError(RepresentationError):
    pass


@dataclass
class AxiomWitness:
    axiom: str
    stage: str
    environment: tuple
    got: frozenset
    expected: frozenset


@dataclass
class AxiomReport:
    checked: int = 0
    failures: list[AxiomWitness] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


class ToposRep:
    """Validated representation: backend category, ground and symbol arrows,
    and the axiom sequents it is required to satisfy."""

    def __init__(self, signature: Signature, base: FiniteCategory,
                 grounds: Mapping[str, Presheaf],
                 symbols: Mapping[str, NatTransform],
                 axioms: Sequence[tuple[str, Sequent]] = ()):
        self.signature = signature
        self.base = base
        self.kit = classifier_kit(base)
        self.grounds = dict(grounds)
        self.symbols = dict(symbols)
        self.axioms = tuple(axioms)
        self._type_cache: dict[TypeExpr, Presheaf] = {}
        self._family_cache: dict[str, NatTransform] = {}

    def ground(self, name: str) -> Presheaf:
        if name not in self.grounds:
            raise RepresentationError(f"ground type {name!r} has no assigned object")
        return self.grounds[name]


def interpret_type(t: TypeExpr, rep: ToposRep) -> Presheaf:
    """Structural interpretation of a type expression as a presheaf."""
    cached = rep._type_cache.get(t)
    if cached is not None:
        return cached
    if isinstance(t, UnitType):
        out = rep.kit.terminal
    elif isinstance(t, TruthType):
        out = rep.kit.omega
    elif isinstance(t, StateType):
        out = rep.ground("Sigma")
    elif isinstance(t, QuantityType):
        out = rep.ground("R")
    elif isinstance(t, GroundType):
        out = rep.ground(t.name)
    elif isinstance(t, ProductType):
        out = product_many([interpret_type(f, rep) for f in t.factors]).presheaf
    elif isinstance(t, PowerType):
        out = power_object(interpret_type(t.inner, rep))
    else:
        raise RepresentationError(f"unknown type expression {t!r}")
    rep._type_cache[t] = out
    return out


def _context_presheaf(context: Sequence[tuple[str, TypeExpr]], rep: ToposRep) -> Presheaf:
    """Product of the context types, with tuple stages; empty context is the
    terminal object (whose point is the empty tuple)."""
    if not context:
        return rep.kit.terminal
    factors = [interpret_type(t, rep) for _, t in context]
    import itertools
    cat = rep.base
    at = {obj: tuple(itertools.product(*(f.stage(obj) for f in factors)))
          for obj in cat.objects}
    maps = {m.id: {tup: tuple(f.apply(m.id, v) for f, v in zip(factors, tup))
                   for tup in at[m.cod]}
            for m in cat.morphisms}
    return Presheaf(cat, at, maps)


def _exp_cell(element, obj: str, f: str, xv):
    for (o, g, x), y in element:
        if o == obj and g == f and x == xv:
            return y
    raise RepresentationError(f"power-object element lacks cell ({obj}, {f}, {xv!r})")


def interpret_term(term: Term, context: Sequence[tuple[str, TypeExpr]],
                   rep: ToposRep) -> NatTransform:
    """Compositional semantics: an arrow from the context product to the
    interpretation of the term's type.  Closed truth-valued terms come out
    as global elements of the classifier (arrows from the terminal object).
    """
    term = desugar_connectives(term)
    ctx_types = dict(context)
    target_type = infer_type(term, ctx_types, rep.signature)
    cat = rep.base
    slot = {name: i for i, (name, _) in enumerate(context)}

    memo: dict = {}

    def ev(n: Term, obj: str, env: tuple, ctx: tuple):
        key = (id(n), obj, env, ctx)
        if key in memo:
            return memo[key]
        out = _ev(n, obj, env, ctx)
        memo[key] = out
        return out

    def env_restrict(f: str, env: tuple, ctx: tuple) -> tuple:
        if not ctx:
            return ()
        types = [interpret_type(t, rep) for _, t in ctx]
        return tuple(x.apply(f, v) for x, v in zip(types, env))

    def _ev(n: Term, obj: str, env: tuple, ctx: tuple):
        names = {name: i for i, (name, _) in enumerate(ctx)}
        if isinstance(n, Var):
            if n.name not in names:
                raise RepresentationError(f"unbound variable {n.name!r}")
            return env[names[n.name]]
        if isinstance(n, Star):
            return ()
        if isinstance(n, App):
            if n.symbol not in rep.symbols:
                raise RepresentationError(f"unassigned function symbol {n.symbol!r}")
            return rep.symbols[n.symbol].apply(obj, ev(n.arg, obj, env, ctx))
        if isinstance(n, Tup):
            return tuple(ev(t, obj, env, ctx) for t in n.items)
        if isinstance(n, Proj):
            return ev(n.item, obj, env, ctx)[n.index - 1]
        if isinstance(n, Eq):
            members = []
            for f in cat.into(obj):
                dom = cat.morphism(f).dom
                env_f = env_restrict(f, env, ctx)
                if ev(n.left, dom, env_f, ctx) == ev(n.right, dom, env_f, ctx):
                    members.append(f)
            return frozenset(members)
        if isinstance(n, In):
            theta = ev(n.container, obj, env, ctx)
            xv = ev(n.element, obj, env, ctx)
            return _exp_cell(theta, obj, cat.id_of(obj), xv)
        if isinstance(n, Compr):
            inner_ctx = ctx + ((n.var.name, n.var.vtype),)
            xobj = interpret_type(n.var.vtype, rep)
            cells = []
            for f in cat.into(obj):
                dom = cat.morphism(f).dom
                env_f = env_restrict(f, env, ctx)
                for xv in xobj.stage(dom):
                    cells.append(((dom, f, xv),
                                  ev(n.body, dom, env_f + (xv,), inner_ctx)))
            return tuple(sorted(cells, key=canon_key))
        raise RepresentationError(f"cannot interpret term former {type(n).__name__}")

    source = _context_presheaf(context, rep)
    target = interpret_type(target_type, rep)
    ctx = tuple(context)
    components = {}
    for obj in cat.objects:
        components[obj] = {env: ev(term, obj, env, ctx) for env in source.stage(obj)}
    arrow = NatTransform(source, target, components)
    bad = validate_nat(arrow)
    if bad.items:
        raise RepresentationError(f"interpretation is not natural: {bad.items[0]}")
    return arrow


def validate_axioms(rep: ToposRep,
                    axioms: Sequence[tuple[str, Sequent]] | None = None) -> AxiomReport:
    """Each sequent must hold at every stage and environment: the meet of the
    context's truth values lies below the conclusion's, and with an empty
    context the conclusion is the principal sieve outright."""
    report = AxiomReport()
    for name, seq in (rep.axioms if axioms is None else tuple(axioms)):
        var_types: dict[str, TypeExpr] = {}
        for formula in list(seq.context) + [seq.conclusion]:
            for vname, annots in free_vars(formula).items():
                types = {t for t in annots if t is not None}
                if not types:
                    raise RepresentationError(
                        f"axiom {name!r} has untyped free variable {vname!r}")
                if len(types) > 1 or (vname in var_types and var_types[vname] not in types):
                    raise RepresentationError(
                        f"axiom {name!r} types variable {vname!r} inconsistently")
                var_types[vname] = types.pop()
        context = tuple(sorted(var_types.items()))
        concl = interpret_term(seq.conclusion, context, rep)
        premises = [interpret_term(g, context, rep) for g in seq.context]
        source = concl.source
        for obj in rep.base.objects:
            top = principal_sieve(rep.base, obj).members
            for env in source.stage(obj):
                got = concl.apply(obj, env)
                bound = top
                for p in premises:
                    bound = bound & p.apply(obj, env)
                report.checked += 1
                if not bound <= got or (not premises and got != top):
                    report.failures.append(AxiomWitness(
                        name, obj, env, got, bound if premises else top))
    return report


def build_rep(signature: Signature, base: FiniteCategory,
              grounds: Mapping[str, Presheaf],
              symbols: Mapping[str, NatTransform],
              axioms: Sequence[tuple[str, Sequent]] = ()) -> ToposRep:
    """Construct and fully validate a representation: ground presheaves are
    functorial, symbol arrows are natural with the right shapes, quantity
    symbols are assigned faithfully, and every axiom holds."""
    rep = ToposRep(signature, base, grounds, symbols, axioms)
    for name, presheaf in rep.grounds.items():
        if presheaf.base != base:
            raise RepresentationError(f"ground {name!r} lives on a different base")
        bad = validate_presheaf(presheaf)
        if bad.items:
            raise RepresentationError(f"ground {name!r} is not functorial: {bad.items[0]}")
    for name, (dom, cod) in signature.symbols.items():
        if name not in rep.symbols:
            raise RepresentationError(f"function symbol {name!r} has no assigned arrow")
        arrow = rep.symbols[name]
        if arrow.source != interpret_type(dom, rep) or \
                arrow.target != interpret_type(cod, rep):
            raise RepresentationError(f"arrow for {name!r} has the wrong shape")
        bad = validate_nat(arrow)
        if bad.items:
            raise RepresentationError(f"arrow for {name!r} is not natural: {bad.items[0]}")
    extra = set(rep.symbols) - set(signature.symbols)
    if extra:
        raise RepresentationError(f"arrows assigned to undeclared symbols {sorted(extra)}")
    quantity = signature.quantity_symbols()
    for i, a in enumerate(quantity):
        for b in quantity[i + 1:]:
            if rep.symbols[a] == rep.symbols[b]:
                raise FaithfulnessError(
                    f"quantity symbols {a!r} and {b!r} share one arrow; "
                    "the representation is not faithful")
    report = validate_axioms(rep)
    if not report.ok:
        w = report.failures[0]
        raise RepresentationError(
            f"axiom {w.axiom!r} fails at stage {w.stage!r}, environment {w.environment!r}: "
            f"got {sorted(w.got)}, needed at least {sorted(w.expected)}")
    return rep


# -- the distinguished arrows ------------------------------------------------------

def proposition_arrow(symbol: str, rep: ToposRep) -> NatTransform:
    """The truth-valued arrow of 'the quantity's value lies in the set': from
    the product of the state object with the power of the value object."""
    return interpret_term(
        In(App(symbol, Var("s")), Var("D")),
        (("s", SIGMA), ("D", PowerType(RQ))), rep)


def prop_family(symbol: str, rep: ToposRep) -> NatTransform:
    """Power transpose of the proposition arrow, as a family of state subsets
    indexed by value sets.  Cached per representation and symbol."""
    cached = rep._family_cache.get(symbol)
    if cached is not None:
        return cached
    flipped = interpret_term(
        In(App(symbol, Var("s")), Var("D")),
        (("D", PowerType(RQ)), ("s", SIGMA)), rep)
    z = interpret_type(PowerType(RQ), rep)
    x = interpret_type(SIGMA, rep)
    out = power_transpose(flipped, z, x)
    rep._family_cache[symbol] = out
    return out


# -- classical backend --------------------------------------------------------------

def _set_arrow(base: FiniteCategory, source: Presheaf, target: Presheaf,
               table: Mapping) -> NatTransform:
    obj = base.objects[0]
    return NatTransform(source, target, {obj: dict(table)})


@dataclass(frozen=True)
class EffectiveClassicalRep:
    """A finite-state system lifted to the one-object backend.

    The value stage holds exactly the attained quantity values; interval
    sets stay intensional and are turned into power-object elements on
    demand, so preimages of arbitrary interval descriptions are computed
    without ever enumerating the real line.
    """
    system: ClassicalSystem
    rep: ToposRep

    @property
    def point(self) -> str:
        return self.rep.base.objects[0]

    @staticmethod
    def build(system: ClassicalSystem) -> "EffectiveClassicalRep":
        base = one_object_category()
        pt = base.objects[0]
        signature = Signature({name: (SIGMA, RQ) for name in system.quantities})
        states = Presheaf(base, {pt: system.states}, {})
        values = tuple(canon_sorted({Fraction(v)
                                     for table in system.quantities.values()
                                     for v in table.values()}))
        value_obj = Presheaf(base, {pt: values}, {})
        arrows = {name: _set_arrow(base, states, value_obj,
                                   {s: Fraction(system.quantities[name][s])
                                    for s in system.states})
                  for name in system.quantities}
        built = build_rep(signature, base, {"Sigma": states, "R": value_obj}, arrows)
        return EffectiveClassicalRep(system, built)

    def indicator(self, symbol: str, state: str, delta: IntervalSet) -> int:
        """Exact two-valued answer to 'the quantity's value lies in delta'."""
        if state not in self.system.states:
            raise InputError(f"unknown state {state!r}")
        return 1 if delta.member(self.system.value(symbol, state)) else 0

    def delta_element(self, delta: IntervalSet):
        """The power-object element of the value stage deciding membership in
        the interval set."""
        pt = self.point
        base = self.rep.base
        values = self.rep.ground("R").stage(pt)
        cells = [((pt, base.id_of(pt), v),
                  principal_sieve(base, pt).members if delta.member(v) else frozenset())
                 for v in values]
        return tuple(sorted(cells, key=canon_key))

    def preimage(self, symbol: str, delta: IntervalSet) -> frozenset:
        """States whose value lands in the interval set, through the power
        transpose of the proposition arrow."""
        family = prop_family(symbol, self.rep)
        subset_element = family.apply(self.point, self.delta_element(delta))
        pt, base = self.point, self.rep.base
        return frozenset(s for s in self.rep.ground("Sigma").stage(pt)
                         if _exp_cell(subset_element, pt, base.id_of(pt), s)
                         == principal_sieve(base, pt).members)


def classical_indicator(symbol: str, state: str, delta: IntervalSet,
                        rep: EffectiveClassicalRep) -> int:
    return rep.indicator(symbol, state, delta)
