"""Shared fixtures: small base categories and deterministic presheaf generators."""
import random

from toposlang.category import FiniteCategory, Morphism, from_poset, one_object_category
from toposlang.presheaf import Presheaf

PT = one_object_category()
TWO = from_poset(["p", "q"], [("p", "q")])
CHAIN3 = from_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
VEE = from_poset(["a", "b", "c"], [("a", "b"), ("a", "c")])
DIAMOND = from_poset(["a", "b", "c", "d"],
                     [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])


def idempotent_monoid() -> FiniteCategory:
    """One object, one idempotent non-identity arrow; a non-poset base."""
    mors = [Morphism("id[x]", "x", "x"), Morphism("e", "x", "x")]
    comp = {("id[x]", "id[x]"): "id[x]", ("id[x]", "e"): "e",
            ("e", "id[x]"): "e", ("e", "e"): "e"}
    return FiniteCategory(["x"], mors, {"x": "id[x]"}, comp)


MONOID = idempotent_monoid()

ALL_BASES = [PT, TWO, CHAIN3, VEE, MONOID]


def set_presheaf(elements) -> Presheaf:
    """A plain finite set as a presheaf over the one-object category."""
    return Presheaf(PT, {"pt": tuple(elements)}, {})


def two_point_presheaf(at_q, at_p, down: dict) -> Presheaf:
    return Presheaf(TWO, {"q": tuple(at_q), "p": tuple(at_p)},
                    {"le[p,q]": dict(down)})


def random_presheaf(cat: FiniteCategory, rng: random.Random, max_size: int = 3,
                    attempts: int = 500) -> Presheaf:
    """Seeded rejection sampling of functorial restriction tables."""
    from toposlang.presheaf import validate_presheaf
    for _ in range(attempts):
        at = {obj: tuple(f"{obj}{i}" for i in range(rng.randint(1, max_size)))
              for obj in cat.objects}
        maps = {}
        for m in cat.morphisms:
            if m.id == cat.id_of(m.dom) and m.dom == m.cod:
                continue
            maps[m.id] = {x: rng.choice(at[m.dom]) for x in at[m.cod]}
        x = Presheaf(cat, at, maps)
        if validate_presheaf(x).ok:
            return x
    raise AssertionError("could not sample a functorial presheaf")


def presheaf_fixture_pool(count: int = 12, seed: int = 7):
    """Deterministic pool of valid presheaves over bases with <= 4 objects."""
    rng = random.Random(seed)
    bases = [PT, TWO, CHAIN3, VEE, DIAMOND, MONOID]
    out = []
    for i in range(count):
        out.append(random_presheaf(bases[i % len(bases)], rng))
    return out
