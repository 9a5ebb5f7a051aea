"""Finite categories as explicit composition tables, plus sieve machinery.

Morphisms are table entries, never generated words, so the unit,
associativity and closure laws are finite checks.  Sieves on an object are
precomposition-closed sets of incoming morphisms; on a poset category they
are exactly the lower sets below the object.  Sieve enumeration is ordered
by bitmask over the category's fixed morphism ordering, which makes every
derived structure (the classifier, its algebras, golden output) byte-stable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import CapExceeded, ToposlangError
from .heyting import HeytingAlgebra, transitive_closure

SIEVE_ENUM_CAP = 1 << 20


class CategoryError(ToposlangError):
    pass


class NotASieve(CategoryError):
    pass


@dataclass(frozen=True)
class Morphism:
    id: str
    dom: str
    cod: str


class FiniteCategory:
    """Objects, morphisms and a partial composition table.

    The constructor checks referential integrity only; the category *laws*
    (units, associativity, closure under composition) are the business of
    `validate_category`, so deliberately broken tables can be built and
    reported on.
    """

    def __init__(self, objects: Sequence[str], morphisms: Sequence[Morphism],
                 identities: Mapping[str, str],
                 composition: Mapping[tuple[str, str], str]):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self._mor = {m.id: m for m in self.morphisms}
        if len(self._mor) != len(self.morphisms):
            raise CategoryError("duplicate morphism ids")
        if len(set(self.objects)) != len(self.objects):
            raise CategoryError("duplicate object ids")
        for m in self.morphisms:
            if m.dom not in set(self.objects) or m.cod not in set(self.objects):
                raise CategoryError(f"morphism {m.id!r} has unknown dom/cod")
        self.identity = dict(identities)
        for obj in self.objects:
            ident = self.identity.get(obj)
            if ident is None or ident not in self._mor:
                raise CategoryError(f"missing identity for object {obj!r}")
            im = self._mor[ident]
            if im.dom != obj or im.cod != obj:
                raise CategoryError(f"identity of {obj!r} is not an endomorphism")
        self._compose = dict(composition)
        for (f, g), fg in self._compose.items():
            if f not in self._mor or g not in self._mor or fg not in self._mor:
                raise CategoryError(f"composition entry ({f!r}, {g!r}) mentions unknown morphism")
        self._into = {obj: tuple(m.id for m in self.morphisms if m.cod == obj)
                      for obj in self.objects}
        self._key = (self.objects, self.morphisms, tuple(sorted(self.identity.items())),
                     tuple(sorted(self._compose.items())))

    def __eq__(self, other):
        return isinstance(other, FiniteCategory) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def morphism(self, mid: str) -> Morphism:
        try:
            return self._mor[mid]
        except KeyError:
            raise CategoryError(f"unknown morphism {mid!r}") from None

    def id_of(self, obj: str) -> str:
        if obj not in self.identity:
            raise CategoryError(f"unknown object {obj!r}")
        return self.identity[obj]

    def compose(self, f: str, g: str) -> str:
        """f o g for g: C -> B, f: B -> A."""
        fm, gm = self.morphism(f), self.morphism(g)
        if gm.cod != fm.dom:
            raise CategoryError(f"morphisms {f!r} o {g!r} are not composable")
        try:
            return self._compose[(f, g)]
        except KeyError:
            raise CategoryError(f"composition table has no entry for ({f!r}, {g!r})") from None

    def has_composite(self, f: str, g: str) -> bool:
        return (f, g) in self._compose

    def into(self, obj: str) -> tuple[str, ...]:
        """Morphisms with codomain obj, in the category's fixed order."""
        if obj not in self._into:
            raise CategoryError(f"unknown object {obj!r}")
        return self._into[obj]

    def composition_items(self):
        return tuple(sorted(self._compose.items()))


@dataclass
class CategoryReport:
    closure: list
    units: list
    associativity: list

    @property
    def ok(self) -> bool:
        return not (self.closure or self.units or self.associativity)


def validate_category(cat: FiniteCategory) -> CategoryReport:
    """Exhaustive unit / associativity / closure check; violations listed."""
    closure, units, assoc = [], [], []
    mors = cat.morphisms
    for f in mors:
        for g in mors:
            if g.cod != f.dom:
                continue
            if not cat.has_composite(f.id, g.id):
                closure.append(("missing", f.id, g.id))
                continue
            fg = cat.morphism(cat.compose(f.id, g.id))
            if fg.dom != g.dom or fg.cod != f.cod:
                closure.append(("bad-signature", f.id, g.id, fg.id))
    for m in mors:
        left = (cat.id_of(m.cod), m.id)
        right = (m.id, cat.id_of(m.dom))
        if cat.has_composite(*left) and cat._compose[left] != m.id:
            units.append(("left-unit", m.id, cat._compose[left]))
        if cat.has_composite(*right) and cat._compose[right] != m.id:
            units.append(("right-unit", m.id, cat._compose[right]))
    for f in mors:
        for g in mors:
            if g.cod != f.dom or not cat.has_composite(f.id, g.id):
                continue
            for h in mors:
                if h.cod != g.dom:
                    continue
                if not (cat.has_composite(g.id, h.id)
                        and cat.has_composite(cat.compose(f.id, g.id), h.id)
                        and cat.has_composite(f.id, cat.compose(g.id, h.id))):
                    continue
                if cat.compose(cat.compose(f.id, g.id), h.id) != \
                        cat.compose(f.id, cat.compose(g.id, h.id)):
                    assoc.append((f.id, g.id, h.id))
    return CategoryReport(closure, units, assoc)


def identity_id(obj: str) -> str:
    return f"id[{obj}]"


def poset_arrow_id(p: str, q: str) -> str:
    return f"le[{p},{q}]"


def from_poset(elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> FiniteCategory:
    """Category of a finite poset: one morphism le[p,q] per related pair p <= q.

    Raises InvalidOrder when the reflexive-transitive closure has a cycle.
    """
    elems = list(elements)
    below = transitive_closure(elems, pairs)  # raises on cycles
    morphisms = [Morphism(identity_id(p), p, p) for p in elems]
    identities = {p: identity_id(p) for p in elems}
    for q in elems:
        for p in sorted(below[q]):
            if p != q:
                morphisms.append(Morphism(poset_arrow_id(p, q), p, q))

    def arrow(p, q):
        return identity_id(p) if p == q else poset_arrow_id(p, q)

    composition = {}
    for f in morphisms:
        for g in morphisms:
            if g.cod == f.dom:
                composition[(f.id, g.id)] = arrow(g.dom, f.cod)
    return FiniteCategory(elems, morphisms, identities, composition)


def one_object_category(obj: str = "pt") -> FiniteCategory:
    """The terminal backend: presheaves over it are plain sets."""
    return from_poset([obj], [])


# -- sieves -------------------------------------------------------------------

@dataclass(frozen=True)
class Sieve:
    target: str
    members: frozenset[str]

    def __contains__(self, mid: str) -> bool:
        return mid in self.members


def sieve_violations(cat: FiniteCategory, target: str, members: frozenset[str]) -> list:
    """Empty when `members` is a sieve on `target`."""
    bad = []
    for f in sorted(members):
        fm = cat.morphism(f)
        if fm.cod != target:
            bad.append(("wrong-codomain", f))
            continue
        for g in cat.morphisms:
            if g.cod == fm.dom and cat.compose(f, g.id) not in members:
                bad.append(("not-precomposition-closed", f, g.id))
    return bad


def is_sieve(cat: FiniteCategory, sieve: Sieve) -> bool:
    return not sieve_violations(cat, sieve.target, sieve.members)


def principal_sieve(cat: FiniteCategory, obj: str) -> Sieve:
    """All morphisms with codomain obj (the top sieve)."""
    return Sieve(obj, frozenset(cat.into(obj)))


def pullback_members(cat: FiniteCategory, f: str, members: frozenset[str]) -> frozenset[str]:
    fm = cat.morphism(f)
    return frozenset(h for h in cat.into(fm.dom) if cat.compose(f, h) in members)


def pullback_sieve(cat: FiniteCategory, f: str, sieve: Sieve) -> Sieve:
    """The sieve {h : f o h in S} on dom(f); principal when f itself is in S."""
    fm = cat.morphism(f)
    if fm.cod != sieve.target:
        raise NotASieve(f"sieve on {sieve.target!r} cannot be pulled back along {f!r}")
    bad = sieve_violations(cat, sieve.target, sieve.members)
    if bad:
        raise NotASieve(f"not a sieve on {sieve.target!r}: {bad[0]}")
    return Sieve(fm.dom, pullback_members(cat, f, sieve.members))


def sieves_on(cat: FiniteCategory, obj: str, *, cap: int = SIEVE_ENUM_CAP) -> list[Sieve]:
    """All sieves on obj, ordered by member-set bitmask over cat's morphism order."""
    incoming = cat.into(obj)
    if 1 << len(incoming) > cap:
        raise CapExceeded(
            f"sieve enumeration on {obj!r} would scan {1 << len(incoming)} subsets (cap {cap})")
    out = []
    for mask in range(1 << len(incoming)):
        members = frozenset(incoming[i] for i in range(len(incoming)) if mask >> i & 1)
        if not sieve_violations(cat, obj, members):
            out.append(Sieve(obj, members))
    return out


def sieve_implies(cat: FiniteCategory, s1: Sieve, s2: Sieve) -> Sieve:
    """{f : B -> A | every g with f o g in s1 also has f o g in s2}."""
    if s1.target != s2.target:
        raise NotASieve("implication needs sieves on the same object")
    members = set()
    for f in cat.into(s1.target):
        fm = cat.morphism(f)
        ok = True
        for g in cat.into(fm.dom):
            fg = cat.compose(f, g)
            if fg in s1.members and fg not in s2.members:
                ok = False
                break
        if ok:
            members.add(f)
    return Sieve(s1.target, frozenset(members))


def sieve_negate(cat: FiniteCategory, s: Sieve) -> Sieve:
    """Pseudo-complement: {f | no precomposite of f lands in s}."""
    return sieve_implies(cat, s, Sieve(s.target, frozenset()))


def sieve_heyting(cat: FiniteCategory, obj: str, *, cap: int = SIEVE_ENUM_CAP) -> HeytingAlgebra:
    """Heyting algebra of all sieves on obj: meet/join are intersection/union,
    implication is found by the generic largest-element scan (and agrees with
    the explicit quantified formula, see `sieve_implies`)."""
    carrier = [s.members for s in sieves_on(cat, obj, cap=cap)]
    return HeytingAlgebra(carrier, frozenset.issubset)
