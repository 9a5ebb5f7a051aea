"""A computational topos of presheaves on a finite category.

Presheaves are contravariant functors into finite sets, stored as explicit
stage sets and restriction tables.  The module provides the full kit the
rest of the toolkit needs: the terminal object and sub-object classifier,
characteristic morphisms and their inverses, the Heyting algebra of
sub-objects, products, exponentials via representables, power objects,
evaluation and power transposes, and global-element enumeration.

Stage elements are arbitrary hashables; every enumeration is emitted in
canonical order (see _canon) so repeated runs are byte-identical.  The
one-object category gives the plain category of sets, where the classifier
degenerates to the two truth values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from ._canon import canon_key, canon_sorted
from .category import FiniteCategory, pullback_members, principal_sieve, sieves_on
from .errors import CapExceeded, ToposlangError
from .heyting import HeytingAlgebra

ENUM_NODE_CAP = 10_000_000
SUB_ENUM_CAP = 1 << 20


class PresheafError(ToposlangError):
    pass


class ShapeMismatch(PresheafError):
    pass


class Presheaf:
    """Stage sets ``at[A]`` plus restriction tables ``maps[f]: X_cod(f) -> X_dom(f)``.

    The constructor normalizes stage order and fills in identity maps; law
    checking lives in `validate_presheaf` so that broken functors can still
    be constructed and reported on.
    """

    def __init__(self, base: FiniteCategory, at: Mapping[str, Iterable],
                 maps: Mapping[str, Mapping]):
        self.base = base
        self.at = {obj: tuple(canon_sorted(set(at.get(obj, ())))) for obj in base.objects}
        self.maps = {}
        for m in base.morphisms:
            if m.id in maps:
                self.maps[m.id] = dict(maps[m.id])
            elif m.dom == m.cod and m.id == base.id_of(m.dom):
                self.maps[m.id] = {x: x for x in self.at[m.dom]}
            else:
                self.maps[m.id] = {}
        self._canon = None

    def stage(self, obj: str) -> tuple:
        return self.at[obj]

    def apply(self, mid: str, x):
        """Restrict x in X_cod(f) along f, landing in X_dom(f)."""
        try:
            return self.maps[mid][x]
        except KeyError:
            raise PresheafError(f"restriction along {mid!r} undefined at {x!r}") from None

    def _canon_key(self):
        if self._canon is None:
            self._canon = (
                self.base,
                tuple(sorted((o, s) for o, s in self.at.items())),
                tuple(sorted((m, tuple(sorted(t.items(), key=lambda kv: canon_key(kv[0]))))
                             for m, t in self.maps.items())),
            )
        return self._canon

    def __eq__(self, other):
        return isinstance(other, Presheaf) and self._canon_key() == other._canon_key()

    def __hash__(self):
        return hash(self._canon_key())


class NatTransform:
    """Stage-indexed component maps between presheaves on the same base."""

    def __init__(self, source: Presheaf, target: Presheaf,
                 components: Mapping[str, Mapping]):
        if source.base != target.base:
            raise ShapeMismatch("natural transformation needs a common base category")
        self.source = source
        self.target = target
        self.components = {obj: dict(components.get(obj, {})) for obj in source.base.objects}
        self._canon = None

    def apply(self, obj: str, x):
        try:
            return self.components[obj][x]
        except KeyError:
            raise PresheafError(f"component at {obj!r} undefined at {x!r}") from None

    def _canon_key(self):
        if self._canon is None:
            self._canon = (
                self.source._canon_key(), self.target._canon_key(),
                tuple(sorted((o, tuple(sorted(t.items(), key=lambda kv: canon_key(kv[0]))))
                             for o, t in self.components.items())),
            )
        return self._canon

    def __eq__(self, other):
        return isinstance(other, NatTransform) and self._canon_key() == other._canon_key()

    def __hash__(self):
        return hash(self._canon_key())


def compose_nats(late: NatTransform, early: NatTransform) -> NatTransform:
    """late o early, checking the middle object matches on the nose."""
    if early.target != late.source:
        raise ShapeMismatch("middle objects of composition differ")
    comps = {obj: {x: late.apply(obj, early.apply(obj, x))
                   for x in early.source.stage(obj)}
             for obj in early.source.base.objects}
    return NatTransform(early.source, late.target, comps)


@dataclass
class LawViolations:
    items: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.items


def validate_presheaf(x: Presheaf) -> LawViolations:
    """Totality, codomain, identity and contravariant-composition checks."""
    bad = LawViolations()
    cat = x.base
    for m in cat.morphisms:
        table = x.maps[m.id]
        for el in x.stage(m.cod):
            if el not in table:
                bad.items.append(("not-total", m.id, el))
            elif table[el] not in set(x.stage(m.dom)):
                bad.items.append(("bad-codomain", m.id, el))
        for el in table:
            if el not in set(x.stage(m.cod)):
                bad.items.append(("junk-domain", m.id, el))
    if not bad.ok:
        return bad
    for obj in cat.objects:
        for el in x.stage(obj):
            if x.apply(cat.id_of(obj), el) != el:
                bad.items.append(("identity-law", obj, el))
    for f in cat.morphisms:
        for g in cat.morphisms:
            if g.cod != f.dom or not cat.has_composite(f.id, g.id):
                continue
            fg = cat.compose(f.id, g.id)
            for el in x.stage(f.cod):
                if x.apply(g.id, x.apply(f.id, el)) != x.apply(fg, el):
                    bad.items.append(("composition-law", f.id, g.id, el))
    return bad


def validate_nat(n: NatTransform) -> LawViolations:
    """Totality plus the naturality square at every morphism and element."""
    bad = LawViolations()
    cat = n.source.base
    for obj in cat.objects:
        comp = n.components.get(obj, {})
        for el in n.source.stage(obj):
            if el not in comp:
                bad.items.append(("not-total", obj, el))
            elif comp[el] not in set(n.target.stage(obj)):
                bad.items.append(("bad-codomain", obj, el))
    if not bad.ok:
        return bad
    for m in cat.morphisms:
        for el in n.source.stage(m.cod):
            if n.apply(m.dom, n.source.apply(m.id, el)) != \
                    n.target.apply(m.id, n.apply(m.cod, el)):
                bad.items.append(("naturality", m.id, el))
    return bad


# -- sub-objects and global elements ------------------------------------------

class Subobject:
    """A stage-wise subset of an ambient presheaf, closed under restriction."""

    def __init__(self, ambient: Presheaf, parts: Mapping[str, Iterable]):
        self.ambient = ambient
        self.parts = {obj: frozenset(parts.get(obj, ())) for obj in ambient.base.objects}

    def violations(self) -> list:
        bad = []
        for obj, sub in self.parts.items():
            extra = sub - set(self.ambient.stage(obj))
            if extra:
                bad.append(("not-a-subset", obj, canon_sorted(extra)[0]))
        for m in self.ambient.base.morphisms:
            for el in self.parts[m.cod]:
                if el in set(self.ambient.stage(m.cod)) and \
                        self.ambient.apply(m.id, el) not in self.parts[m.dom]:
                    bad.append(("not-restriction-closed", m.id, el))
        return bad

    def key(self):
        return tuple(sorted((obj, tuple(canon_sorted(sub)))
                            for obj, sub in self.parts.items()))

    def __eq__(self, other):
        return isinstance(other, Subobject) and self.ambient == other.ambient \
            and self.parts == other.parts

    def __hash__(self):
        return hash(self.key())


class GlobalElement:
    """A matching family: one element per stage, compatible with restriction."""

    def __init__(self, of: Presheaf, choice: Mapping[str, object]):
        self.of = of
        self.choice = dict(choice)

    def violations(self) -> list:
        bad = []
        for obj in self.of.base.objects:
            if obj not in self.choice or self.choice[obj] not in set(self.of.stage(obj)):
                bad.append(("no-choice", obj))
        if bad:
            return bad
        for m in self.of.base.morphisms:
            if self.of.apply(m.id, self.choice[m.cod]) != self.choice[m.dom]:
                bad.append(("matching-condition", m.id))
        return bad

    def key(self):
        return tuple(sorted(self.choice.items()))

    def as_nat(self, terminal: "Presheaf") -> NatTransform:
        return NatTransform(terminal, self.of,
                            {obj: {(): self.choice[obj]} for obj in self.of.base.objects})

    def __eq__(self, other):
        return isinstance(other, GlobalElement) and self.of == other.of \
            and self.choice == other.choice

    def __hash__(self):
        return hash(self.key())


# -- classifier ----------------------------------------------------------------

@dataclass(frozen=True)
class ClassifierKit:
    terminal: Presheaf
    omega: Presheaf
    true_arrow: NatTransform


def terminal_presheaf(cat: FiniteCategory) -> Presheaf:
    """Single point () at every stage."""
    return Presheaf(cat, {obj: ((),) for obj in cat.objects},
                    {m.id: {(): ()} for m in cat.morphisms})


@lru_cache(maxsize=None)
def classifier_kit(cat: FiniteCategory) -> ClassifierKit:
    """Terminal object, sieve classifier and the arrow picking the principal
    sieve at each stage."""
    terminal = terminal_presheaf(cat)
    at = {obj: tuple(s.members for s in sieves_on(cat, obj)) for obj in cat.objects}
    maps = {}
    for m in cat.morphisms:
        maps[m.id] = {members: pullback_members(cat, m.id, members)
                      for members in at[m.cod]}
    omega = Presheaf(cat, at, maps)
    true_arrow = NatTransform(terminal, omega, {
        obj: {(): principal_sieve(cat, obj).members} for obj in cat.objects})
    return ClassifierKit(terminal, omega, true_arrow)


def char_morphism(k: Subobject) -> NatTransform:
    """x at stage A goes to the sieve of arrows pulling x into the sub-object."""
    bad = k.violations()
    if bad:
        raise PresheafError(f"invalid sub-object: {bad[0]}")
    x = k.ambient
    cat = x.base
    kit = classifier_kit(cat)
    comps = {}
    for obj in cat.objects:
        comps[obj] = {
            el: frozenset(f for f in cat.into(obj)
                          if x.apply(f, el) in k.parts[cat.morphism(f).dom])
            for el in x.stage(obj)}
    return NatTransform(x, kit.omega, comps)


def subobject_of_char(chi: NatTransform) -> Subobject:
    """Inverse of `char_morphism`: the stage-wise preimage of the principal sieve."""
    bad = validate_nat(chi)
    if bad.items:
        raise PresheafError(f"characteristic arrow is not natural: {bad.items[0]}")
    cat = chi.source.base
    parts = {obj: frozenset(el for el in chi.source.stage(obj)
                            if chi.apply(obj, el) == principal_sieve(cat, obj).members)
             for obj in cat.objects}
    return Subobject(chi.source, parts)


def enumerate_subobjects(x: Presheaf, *, cap: int = SUB_ENUM_CAP) -> list[Subobject]:
    """All restriction-closed part families, in canonical key order."""
    cat = x.base
    objs = list(cat.objects)
    total = 1
    for obj in objs:
        total <<= len(x.stage(obj))
        if total > cap:
            raise CapExceeded(f"sub-object enumeration exceeds cap {cap}")
    subsets_per_obj = []
    for obj in objs:
        els = x.stage(obj)
        subs = [frozenset()]
        for el in els:
            subs += [s | {el} for s in subs]
        subsets_per_obj.append(subs)
    out = []

    def rec(i: int, parts: dict):
        if i == len(objs):
            k = Subobject(x, parts)
            if not k.violations():
                out.append(k)
            return
        for s in subsets_per_obj[i]:
            parts[objs[i]] = s
            rec(i + 1, parts)
        del parts[objs[i]]

    rec(0, {})
    out.sort(key=lambda k: canon_key(k.key()))
    return out


@dataclass(frozen=True)
class SubobjectAlgebra:
    algebra: HeytingAlgebra
    subobjects: Mapping  # element id (Subobject.key()) -> Subobject


def sub_heyting(x: Presheaf, *, cap: int = SUB_ENUM_CAP) -> SubobjectAlgebra:
    """Heyting algebra of Sub(X): meet/join stage-wise, implication by the
    generic finite-lattice scan (the stage-wise quantified formula is checked
    against it in the test suite)."""
    subs = enumerate_subobjects(x, cap=cap)
    by_key = {k.key(): k for k in subs}

    def leq(a, b):
        ka, kb = by_key[a], by_key[b]
        return all(ka.parts[obj] <= kb.parts[obj] for obj in x.base.objects)

    algebra = HeytingAlgebra([k.key() for k in subs], leq)
    return SubobjectAlgebra(algebra, by_key)


def subobject_implies(k: Subobject, l: Subobject) -> Subobject:
    """Stage-wise Heyting implication in Sub(X): the elements all of whose
    restrictions landing in K also land in L."""
    x = k.ambient
    cat = x.base
    parts = {}
    for obj in cat.objects:
        keep = []
        for el in x.stage(obj):
            ok = True
            for f in cat.into(obj):
                y = x.apply(f, el)
                if y in k.parts[cat.morphism(f).dom] and \
                        y not in l.parts[cat.morphism(f).dom]:
                    ok = False
                    break
            if ok:
                keep.append(el)
        parts[obj] = frozenset(keep)
    return Subobject(x, parts)


def global_elements(x: Presheaf) -> list[GlobalElement]:
    """All matching families, canonically ordered."""
    cat = x.base
    objs = list(cat.objects)
    out = []

    def rec(i: int, choice: dict):
        if i == len(objs):
            g = GlobalElement(x, choice)
            if not g.violations():
                out.append(g)
            return
        for el in x.stage(objs[i]):
            choice[objs[i]] = el
            rec(i + 1, choice)
        del choice[objs[i]]

    rec(0, {})
    out.sort(key=lambda g: canon_key(g.key()))
    return out


# -- products -------------------------------------------------------------------

@dataclass(frozen=True)
class ProductDiagram:
    presheaf: Presheaf
    projections: tuple[NatTransform, ...]


def product_many(factors: Sequence[Presheaf]) -> ProductDiagram:
    """n-ary product with tuple stages; the empty product is the terminal object."""
    if not factors:
        raise ShapeMismatch("product of no factors: use terminal_presheaf")
    cat = factors[0].base
    for f in factors:
        if f.base != cat:
            raise ShapeMismatch("product factors live on different bases")
    import itertools
    at = {obj: tuple(itertools.product(*(f.stage(obj) for f in factors)))
          for obj in cat.objects}
    maps = {m.id: {tup: tuple(f.apply(m.id, v) for f, v in zip(factors, tup))
                   for tup in at[m.cod]}
            for m in cat.morphisms}
    prod = Presheaf(cat, at, maps)
    projections = tuple(
        NatTransform(prod, factors[i],
                     {obj: {tup: tup[i] for tup in prod.stage(obj)} for obj in cat.objects})
        for i in range(len(factors)))
    return ProductDiagram(prod, projections)


def product(x: Presheaf, y: Presheaf) -> ProductDiagram:
    return product_many([x, y])


def pair_into_product(diagram: ProductDiagram, arrows: Sequence[NatTransform]) -> NatTransform:
    """The mediating arrow <f1,...,fn> into the product."""
    z = arrows[0].source
    comps = {obj: {el: tuple(a.apply(obj, el) for a in arrows) for el in z.stage(obj)}
             for obj in z.base.objects}
    return NatTransform(z, diagram.presheaf, comps)


def verify_product_universal(diagram: ProductDiagram, z: Presheaf,
                             *, cap: int = ENUM_NODE_CAP) -> bool:
    """Exhaustion check of the universal property against a test object z."""
    factors = [p.target for p in diagram.projections]
    homs = [enumerate_nats(z, f, cap=cap) for f in factors]
    into_prod = enumerate_nats(z, diagram.presheaf, cap=cap)
    import itertools
    seen = set()
    for combo in itertools.product(*homs):
        h = pair_into_product(diagram, combo)
        if tuple(compose_nats(p, h) for p in diagram.projections) != tuple(combo):
            return False
        seen.add(h._canon_key())
    return len(seen) == len(into_prod) and \
        {n._canon_key() for n in into_prod} == seen


# -- natural transformation enumeration ----------------------------------------

def enumerate_nats(x: Presheaf, y: Presheaf, *, cap: int = ENUM_NODE_CAP) -> list[NatTransform]:
    """All natural transformations x -> y via backtracking with forced
    propagation along restrictions.  Deterministic order; CapExceeded when
    the search would visit more than `cap` nodes."""
    if x.base != y.base:
        raise ShapeMismatch("hom-set needs a common base")
    cat = x.base
    cells = [(obj, el) for obj in cat.objects for el in x.stage(obj)]
    cell_index = {c: i for i, c in enumerate(cells)}
    # per cell: list of (morphism, target cell, map of y) for propagation
    prop = [[] for _ in cells]
    for m in cat.morphisms:
        if m.id == cat.id_of(m.dom) and m.dom == m.cod:
            continue
        for el in x.stage(m.cod):
            src = cell_index[(m.cod, el)]
            dst = cell_index[(m.dom, x.apply(m.id, el))]
            prop[src].append((m.id, dst))
    assign: list = [None] * len(cells)
    out = []
    nodes = 0

    def force(i: int, value, trail: list) -> bool:
        if assign[i] is not None:
            return assign[i] == value
        assign[i] = value
        trail.append(i)
        for mid, dst in prop[i]:
            forced = y.apply(mid, value)
            if not force(dst, forced, trail):
                return False
        return True

    def rec(i: int):
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise CapExceeded(f"hom-set enumeration exceeded {cap} nodes")
        while i < len(cells) and assign[i] is not None:
            i += 1
        if i == len(cells):
            comps: dict = {obj: {} for obj in cat.objects}
            for (obj, el), val in zip(cells, assign):
                comps[obj][el] = val
            out.append(NatTransform(x, y, comps))
            return
        obj, _ = cells[i]
        for val in y.stage(obj):
            trail: list = []
            if force(i, val, trail):
                rec(i + 1)
            for j in trail:
                assign[j] = None

    rec(0)
    out.sort(key=lambda n: canon_key(n._canon_key()[2]))
    return out


# -- exponentials and power objects ----------------------------------------------

def representable(cat: FiniteCategory, obj: str) -> Presheaf:
    """Hom(-, obj) with restriction by precomposition."""
    at = {b: tuple(f for f in cat.into(obj) if cat.morphism(f).dom == b)
          for b in cat.objects}
    maps = {m.id: {f: cat.compose(f, m.id) for f in at[m.cod]} for m in cat.morphisms}
    return Presheaf(cat, at, maps)


def _exp_element(theta: NatTransform) -> tuple:
    """Canonical element form: sorted tuple of ((stage, arrow-to-A, x), y)."""
    cells = []
    for obj, table in theta.components.items():
        for (f, xv), yv in table.items():
            cells.append(((obj, f, xv), yv))
    return tuple(sorted(cells, key=canon_key))


def _exp_lookup(element: tuple, obj: str, f: str, xv):
    for (o, g, x), y in element:
        if o == obj and g == f and x == xv:
            return y
    raise PresheafError(f"exponential element has no cell ({obj!r}, {f!r}, {xv!r})")


@lru_cache(maxsize=None)
def exponential(x: Presheaf, y: Presheaf, *, cap: int = ENUM_NODE_CAP) -> Presheaf:
    """Y^X with stage A the natural transformations Hom(-,A) x X -> Y and
    restriction by precomposition of the representable slot.  Cached: the
    same exponentials recur throughout term interpretation."""
    if x.base != y.base:
        raise ShapeMismatch("exponential needs a common base")
    cat = x.base
    at = {}
    for obj in cat.objects:
        dia = product_many([representable(cat, obj), x])
        at[obj] = tuple(_exp_element(n) for n in enumerate_nats(dia.presheaf, y, cap=cap))
    maps = {}
    for m in cat.morphisms:
        table = {}
        for el in at[m.cod]:
            # theta'(h: C -> dom(m), xv) = theta(m o h, xv)
            cells = []
            for h in cat.into(m.dom):
                hdom = cat.morphism(h).dom
                for xv in x.stage(hdom):
                    cells.append(((hdom, h, xv),
                                  _exp_lookup(el, hdom, cat.compose(m.id, h), xv)))
            table[el] = tuple(sorted(cells, key=canon_key))
        maps[m.id] = table
    return Presheaf(cat, at, maps)


def power_object(x: Presheaf, *, cap: int = ENUM_NODE_CAP) -> Presheaf:
    return exponential(x, classifier_kit(x.base).omega, cap=cap)


def evaluation(x: Presheaf, y: Presheaf, *, cap: int = ENUM_NODE_CAP) -> NatTransform:
    """ev: Y^X x X -> Y, (theta, x) at stage A = theta(id_A, x)."""
    cat = x.base
    exp = exponential(x, y, cap=cap)
    dia = product(exp, x)
    comps = {obj: {(theta, xv): _exp_lookup(theta, obj, cat.id_of(obj), xv)
                   for (theta, xv) in dia.presheaf.stage(obj)}
             for obj in cat.objects}
    return NatTransform(dia.presheaf, y, comps)


def eval_arrow(x: Presheaf, *, cap: int = ENUM_NODE_CAP) -> NatTransform:
    """Membership evaluation X x PX -> Omega, (x, theta) = theta(id, x)."""
    cat = x.base
    kit = classifier_kit(cat)
    px = power_object(x, cap=cap)
    dia = product(x, px)
    comps = {obj: {(xv, theta): _exp_lookup(theta, obj, cat.id_of(obj), xv)
                   for (xv, theta) in dia.presheaf.stage(obj)}
             for obj in cat.objects}
    return NatTransform(dia.presheaf, kit.omega, comps)


def exp_transpose(f: NatTransform, z: Presheaf, x: Presheaf, y: Presheaf,
                  *, cap: int = ENUM_NODE_CAP) -> NatTransform:
    """Hom(Z x X, Y) -> Hom(Z, Y^X).  `f` must go out of product(z, x)."""
    cat = z.base
    dia = product(z, x)
    if f.source != dia.presheaf or f.target != y:
        raise ShapeMismatch("arrow to transpose is not Z x X -> Y")
    exp = exponential(x, y, cap=cap)
    comps = {}
    for obj in cat.objects:
        table = {}
        for zv in z.stage(obj):
            cells = []
            for g in cat.into(obj):
                gdom = cat.morphism(g).dom
                for xv in x.stage(gdom):
                    cells.append(((gdom, g, xv), f.apply(gdom, (z.apply(g, zv), xv))))
            element = tuple(sorted(cells, key=canon_key))
            if element not in set(exp.stage(obj)):
                raise PresheafError("transpose produced a non-natural family")
            table[zv] = element
        comps[obj] = table
    return NatTransform(z, exp, comps)


def exp_untranspose(h: NatTransform, z: Presheaf, x: Presheaf, y: Presheaf,
                    *, cap: int = ENUM_NODE_CAP) -> NatTransform:
    """Hom(Z, Y^X) -> Hom(Z x X, Y)."""
    cat = z.base
    exp = exponential(x, y, cap=cap)
    if h.source != z or h.target != exp:
        raise ShapeMismatch("arrow to untranspose is not Z -> Y^X")
    dia = product(z, x)
    comps = {obj: {(zv, xv): _exp_lookup(h.apply(obj, zv), obj, cat.id_of(obj), xv)
                   for (zv, xv) in dia.presheaf.stage(obj)}
             for obj in cat.objects}
    return NatTransform(dia.presheaf, y, comps)


def power_transpose(f: NatTransform, z: Presheaf, x: Presheaf,
                    *, cap: int = ENUM_NODE_CAP) -> NatTransform:
    """The name-forming bijection Hom(Z x X, Omega) -> Hom(Z, PX)."""
    return exp_transpose(f, z, x, classifier_kit(z.base).omega, cap=cap)


def power_untranspose(h: NatTransform, z: Presheaf, x: Presheaf,
                      *, cap: int = ENUM_NODE_CAP) -> NatTransform:
    return exp_untranspose(h, z, x, classifier_kit(z.base).omega, cap=cap)


def verify_exponential_adjunction(z: Presheaf, x: Presheaf, y: Presheaf,
                                  *, cap: int = ENUM_NODE_CAP) -> bool:
    """Element-for-element bijection Hom(Z x X, Y) = Hom(Z, Y^X)."""
    dia = product(z, x)
    lhs = enumerate_nats(dia.presheaf, y, cap=cap)
    exp = exponential(x, y, cap=cap)
    rhs = enumerate_nats(z, exp, cap=cap)
    image = set()
    for f in lhs:
        h = exp_transpose(f, z, x, y, cap=cap)
        if exp_untranspose(h, z, x, y, cap=cap) != f:
            return False
        image.add(h._canon_key())
    if len(image) != len(lhs):
        return False
    if image != {h._canon_key() for h in rhs}:
        return False
    for h in rhs:
        if exp_transpose(exp_untranspose(h, z, x, y, cap=cap), z, x, y, cap=cap) != h:
            return False
    return True


# -- stretch validation extras: initial object and co-products --------------------

def initial_presheaf(cat: FiniteCategory) -> Presheaf:
    """Empty at every stage; Hom(0, X) is a singleton for every X."""
    return Presheaf(cat, {obj: () for obj in cat.objects},
                    {m.id: {} for m in cat.morphisms})


def coproduct(x: Presheaf, y: Presheaf) -> ProductDiagram:
    """Tagged disjoint union with the two injections (validation extra)."""
    if x.base != y.base:
        raise ShapeMismatch("coproduct needs a common base")
    cat = x.base
    at = {obj: tuple(canon_sorted([("inl", v) for v in x.stage(obj)]
                                  + [("inr", v) for v in y.stage(obj)]))
          for obj in cat.objects}
    maps = {m.id: {("inl", v): ("inl", x.apply(m.id, v)) for v in x.stage(m.cod)}
            | {("inr", v): ("inr", y.apply(m.id, v)) for v in y.stage(m.cod)}
            for m in cat.morphisms}
    cop = Presheaf(cat, at, maps)
    inl = NatTransform(x, cop, {obj: {v: ("inl", v) for v in x.stage(obj)}
                                for obj in cat.objects})
    inr = NatTransform(y, cop, {obj: {v: ("inr", v) for v in y.stage(obj)}
                                for obj in cat.objects})
    return ProductDiagram(cop, (inl, inr))
