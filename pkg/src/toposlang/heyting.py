"""Finite bounded lattices and Heyting algebras.

Elements are interned: the carrier is an ordered tuple of hashable ids and
all structure is precomputed (or memoized) against integer indices.  The
order relation is stored as one bitmask per element (its down-set), which
makes meets and joins dictionary lookups: the down-set of a glb is exactly
the intersection of the down-sets, so ``meet(a, b)`` is the unique element
whose down-mask equals ``down[a] & down[b]``.

Implication is computed by definition, as the largest g with g & a <= b;
no per-instance formula is assumed, and `check_heyting_laws` verifies the
adjunction (and the lattice axioms, distributivity and double negation)
exhaustively at desk scale.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from ._canon import canon_sorted
from .errors import CapExceeded, ToposlangError

DEFAULT_CAP = 4096
_EAGER_PAIR_LIMIT = 256   # precompute meet/join tables up to this carrier size
_EAGER_IMPLIES_LIMIT = 128


class LatticeError(ToposlangError):
    pass


class UnknownElement(LatticeError):
    pass


class InvalidOrder(LatticeError):
    pass


class NotALattice(LatticeError):
    pass


class TopologyError(LatticeError):
    pass


class BoundedLattice:
    """Finite bounded lattice over an ordered carrier of hashable ids."""

    def __init__(self, elements: Sequence, leq: Callable[[object, object], bool],
                 *, cap: int = DEFAULT_CAP):
        elems = tuple(elements)
        if len(elems) == 0:
            raise InvalidOrder("carrier is empty")
        if len(elems) > cap:
            raise CapExceeded(f"carrier size {len(elems)} exceeds cap {cap}")
        if len(set(elems)) != len(elems):
            raise InvalidOrder("duplicate element ids in carrier")
        self._elems = elems
        self._index = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        down = [0] * n
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                if leq(b, a):
                    down[i] |= 1 << j
        self._down = down
        self._validate_order()
        up = [0] * n
        for i in range(n):
            for j in range(n):
                if down[j] >> i & 1:
                    up[i] |= 1 << j
        self._up = up
        self._by_down = {m: i for i, m in enumerate(down)}
        self._by_up = {m: i for i, m in enumerate(up)}
        full = (1 << n) - 1
        if full not in self._by_down:
            raise InvalidOrder("no top element")
        if full not in self._by_up:
            raise InvalidOrder("no bottom element")
        self._top = self._by_down[full]
        self._bottom = self._by_up[full]
        self._meet_table: Optional[list[list[int]]] = None
        self._join_table: Optional[list[list[int]]] = None
        self._meet_memo: dict[tuple[int, int], int] = {}
        self._join_memo: dict[tuple[int, int], int] = {}
        if n <= _EAGER_PAIR_LIMIT:
            self._meet_table = [[self._meet_ix(i, j) for j in range(n)] for i in range(n)]
            self._join_table = [[self._join_ix(i, j) for j in range(n)] for i in range(n)]

    def _validate_order(self):
        n = len(self._elems)
        down = self._down
        for i in range(n):
            if not (down[i] >> i) & 1:
                raise InvalidOrder(f"order not reflexive at {self._elems[i]!r}")
            for j in range(n):
                if i != j and (down[i] >> j) & 1 and (down[j] >> i) & 1:
                    raise InvalidOrder(
                        f"order not antisymmetric at {self._elems[i]!r}, {self._elems[j]!r}")
                if (down[i] >> j) & 1 and (down[j] | down[i]) != down[i]:
                    raise InvalidOrder(
                        f"order not transitive below {self._elems[i]!r} at {self._elems[j]!r}")

    # -- indexed core -----------------------------------------------------

    def _ix(self, a) -> int:
        try:
            return self._index[a]
        except KeyError:
            raise UnknownElement(f"unknown element id {a!r}") from None

    def _meet_ix(self, i: int, j: int) -> int:
        if self._meet_table is not None:
            return self._meet_table[i][j]
        key = (i, j) if i <= j else (j, i)
        got = self._meet_memo.get(key)
        if got is None:
            mask = self._down[i] & self._down[j]
            got = self._by_down.get(mask)
            if got is None:
                raise NotALattice(
                    f"no meet for {self._elems[i]!r}, {self._elems[j]!r}")
            self._meet_memo[key] = got
        return got

    def _join_ix(self, i: int, j: int) -> int:
        if self._join_table is not None:
            return self._join_table[i][j]
        key = (i, j) if i <= j else (j, i)
        got = self._join_memo.get(key)
        if got is None:
            mask = self._up[i] & self._up[j]
            got = self._by_up.get(mask)
            if got is None:
                raise NotALattice(
                    f"no join for {self._elems[i]!r}, {self._elems[j]!r}")
            self._join_memo[key] = got
        return got

    # -- public API --------------------------------------------------------

    @property
    def elements(self) -> tuple:
        return self._elems

    def __len__(self) -> int:
        return len(self._elems)

    def __contains__(self, a) -> bool:
        return a in self._index

    @property
    def bottom(self):
        return self._elems[self._bottom]

    @property
    def top(self):
        return self._elems[self._top]

    def leq(self, a, b) -> bool:
        return (self._down[self._ix(b)] >> self._ix(a)) & 1 == 1

    def meet(self, a, b):
        return self._elems[self._meet_ix(self._ix(a), self._ix(b))]

    def join(self, a, b):
        return self._elems[self._join_ix(self._ix(a), self._ix(b))]

    def meet_all(self, items) -> object:
        out = self._top
        for a in items:
            out = self._meet_ix(out, self._ix(a))
        return self._elems[out]

    def join_all(self, items) -> object:
        out = self._bottom
        for a in items:
            out = self._join_ix(out, self._ix(a))
        return self._elems[out]


class HeytingAlgebra(BoundedLattice):
    """Bounded lattice with implication; negate(a) = implies(a, bottom)."""

    def __init__(self, elements: Sequence, leq: Callable[[object, object], bool],
                 *, cap: int = DEFAULT_CAP):
        super().__init__(elements, leq, cap=cap)
        self._implies_memo: dict[tuple[int, int], int] = {}
        if len(self._elems) <= _EAGER_IMPLIES_LIMIT:
            n = len(self._elems)
            for i in range(n):
                for j in range(n):
                    self._implies_ix(i, j)

    def _implies_ix(self, i: int, j: int) -> int:
        got = self._implies_memo.get((i, j))
        if got is None:
            down, bi, bj = self._down, self._down[i], self._down[j]
            candidates = [g for g in range(len(self._elems))
                          if (down[g] & bi) | bj == bj]
            up = self._up
            common = (1 << len(self._elems)) - 1
            for g in candidates:
                common &= up[g]
            got = self._by_up.get(common)
            if got is None or got not in candidates:
                raise NotALattice(
                    f"no largest g with g & {self._elems[i]!r} <= {self._elems[j]!r}; "
                    "lattice is not a Heyting algebra")
            self._implies_memo[(i, j)] = got
        return got

    def implies(self, a, b):
        return self._elems[self._implies_ix(self._ix(a), self._ix(b))]

    def negate(self, a):
        return self._elems[self._implies_ix(self._ix(a), self._bottom)]


# -- functional wrappers ----------------------------------------------------

def lattice_op(kind: str, algebra: BoundedLattice, a, b):
    """kind in {meet, join, leq}; raises UnknownElement on a bad id."""
    if kind == "meet":
        return algebra.meet(a, b)
    if kind == "join":
        return algebra.join(a, b)
    if kind == "leq":
        return algebra.leq(a, b)
    raise ValueError(f"unknown lattice operation {kind!r}")


def heyting_implies(algebra: HeytingAlgebra, a, b):
    return algebra.implies(a, b)


def heyting_negate(algebra: HeytingAlgebra, a):
    return algebra.negate(a)


# -- builders ---------------------------------------------------------------

def _subsets(base: tuple) -> list[frozenset]:
    out = [frozenset()]
    for x in base:
        out += [s | {x} for s in out]
    return out


def powerset_algebra(base: Iterable, *, cap: int = DEFAULT_CAP) -> HeytingAlgebra:
    """Boolean algebra of all subsets of a finite base set."""
    items = tuple(canon_sorted(set(base)))
    if 1 << len(items) > cap:
        raise CapExceeded(f"powerset of {len(items)} elements exceeds cap {cap}")
    elems = canon_sorted(_subsets(items))
    alg = HeytingAlgebra(elems, frozenset.issubset, cap=cap)
    for a in alg.elements:  # Boolean sanity: excluded middle is strict here
        if alg.join(a, alg.negate(a)) != alg.top:
            raise LatticeError(f"powerset instance is not Boolean at {a!r}")
    return alg


def open_set_algebra(opens: Iterable[Iterable], *, cap: int = DEFAULT_CAP) -> HeytingAlgebra:
    """Heyting algebra of the open sets of a finite topology.

    The family must contain the empty set and the whole space and be closed
    under pairwise intersection and union (which, finitely, is all that
    arbitrary unions require).
    """
    sets = [frozenset(s) for s in opens]
    family = set(sets)
    space = frozenset().union(*sets) if sets else frozenset()
    if frozenset() not in family:
        raise TopologyError("topology must contain the empty set")
    if space not in family:
        raise TopologyError("topology must contain the whole space")
    for a in canon_sorted(family):
        for b in canon_sorted(family):
            if a & b not in family:
                raise TopologyError(f"not closed under intersection: {set(a)} & {set(b)}")
            if a | b not in family:
                raise TopologyError(f"not closed under union: {set(a)} | {set(b)}")
    elems = canon_sorted(family)
    return HeytingAlgebra(elems, frozenset.issubset, cap=cap)


def transitive_closure(elements: Sequence, pairs: Iterable[tuple]) -> dict:
    """Reflexive-transitive closure as element -> frozenset of predecessors.

    Raises InvalidOrder on a cycle (antisymmetry failure).
    """
    elems = list(elements)
    below = {e: {e} for e in elems}
    for p, q in pairs:
        if p not in below or q not in below:
            raise UnknownElement(f"order pair ({p!r}, {q!r}) mentions unknown element")
        below[q].add(p)
    changed = True
    while changed:
        changed = False
        for q in elems:
            extra = set()
            for p in below[q]:
                extra |= below[p]
            if not extra <= below[q]:
                below[q] |= extra
                changed = True
    for a in elems:
        for b in sorted(below[a]):
            if b != a and a in below[b]:
                raise InvalidOrder(f"cycle detected through {a!r} and {b!r}")
    return {e: frozenset(s) for e, s in below.items()}


def lower_set_algebra(elements: Sequence, pairs: Iterable[tuple], *,
                      cap: int = DEFAULT_CAP) -> HeytingAlgebra:
    """Heyting algebra of all lower sets of a finite poset."""
    elems = list(elements)
    below = transitive_closure(elems, pairs)
    if 1 << len(elems) > cap:
        raise CapExceeded(f"lower-set enumeration over {len(elems)} points exceeds cap")
    lower = [s for s in _subsets(tuple(elems))
             if all(below[x] <= s for x in s)]
    return HeytingAlgebra(canon_sorted(lower), frozenset.issubset, cap=cap)


def build_algebra(spec: Mapping, *, cap: int = DEFAULT_CAP) -> HeytingAlgebra:
    """Build a validated Heyting algebra from a declarative spec.

    Kinds: powerset(base), open_sets(sets), lower_sets(elements, order),
    sieves(category, object).
    """
    kind = spec.get("kind")
    if kind == "powerset":
        alg = powerset_algebra(spec["base"], cap=cap)
    elif kind == "open_sets":
        alg = open_set_algebra(spec["sets"], cap=cap)
    elif kind == "lower_sets":
        alg = lower_set_algebra(spec["elements"], spec.get("order", ()), cap=cap)
    elif kind == "sieves":
        from .category import sieve_heyting
        alg = sieve_heyting(spec["category"], spec["object"], cap=cap)
    else:
        raise ValueError(f"unknown algebra kind {kind!r}")
    report = check_heyting_laws(alg)
    if not report.ok:
        raise LatticeError(f"built algebra violates Heyting laws: {report.summary()}")
    return alg


# -- law checking -------------------------------------------------------------

@dataclass
class LawReport:
    lattice: list = field(default_factory=list)
    distributivity: list = field(default_factory=list)
    adjunction: list = field(default_factory=list)
    double_negation: list = field(default_factory=list)
    exhaustive: bool = True

    @property
    def ok(self) -> bool:
        return not (self.lattice or self.distributivity
                    or self.adjunction or self.double_negation)

    def summary(self) -> str:
        if self.ok:
            return "all laws hold" + ("" if self.exhaustive else " (sampled)")
        bits = []
        for name in ("lattice", "distributivity", "adjunction", "double_negation"):
            bad = getattr(self, name)
            if bad:
                bits.append(f"{name}: {len(bad)} violation(s), first {bad[0]}")
        return "; ".join(bits)


def check_heyting_laws(algebra: BoundedLattice, *, exhaustive_limit: int = 64,
                       samples: int = 20000, seed: int = 0) -> LawReport:
    """Exhaustively verify lattice laws, distributivity and (for Heyting
    instances) the implication adjunction and a <= ~~a.

    Triple-quantified laws go exhaustive up to ``exhaustive_limit`` carrier
    elements and fall back to seeded random sampling above it.  Violations
    are report content, never exceptions.
    """
    report = LawReport()
    elems = algebra.elements
    n = len(elems)
    bot, top = algebra.bottom, algebra.top
    for a in elems:
        if not algebra.leq(bot, a) or not algebra.leq(a, top):
            report.lattice.append(("bounds", a))
        if algebra.meet(a, a) != a or algebra.join(a, a) != a:
            report.lattice.append(("idempotence", a))
    for a in elems:
        for b in elems:
            if algebra.meet(a, b) != algebra.meet(b, a):
                report.lattice.append(("meet-commutativity", a, b))
            if algebra.join(a, b) != algebra.join(b, a):
                report.lattice.append(("join-commutativity", a, b))
            if algebra.meet(a, algebra.join(a, b)) != a:
                report.lattice.append(("absorption-meet-join", a, b))
            if algebra.join(a, algebra.meet(a, b)) != a:
                report.lattice.append(("absorption-join-meet", a, b))
            if algebra.leq(a, b) != (algebra.meet(a, b) == a):
                report.lattice.append(("order-meet-consistency", a, b))

    if n <= exhaustive_limit:
        triples = ((a, b, c) for a in elems for b in elems for c in elems)
    else:
        report.exhaustive = False
        rng = random.Random(seed)
        triples = ((rng.choice(elems), rng.choice(elems), rng.choice(elems))
                   for _ in range(samples))
    is_heyting = isinstance(algebra, HeytingAlgebra)
    for a, b, c in triples:
        if algebra.meet(algebra.meet(a, b), c) != algebra.meet(a, algebra.meet(b, c)):
            report.lattice.append(("meet-associativity", a, b, c))
        if algebra.join(algebra.join(a, b), c) != algebra.join(a, algebra.join(b, c)):
            report.lattice.append(("join-associativity", a, b, c))
        if algebra.meet(algebra.join(a, b), algebra.join(a, c)) != \
                algebra.join(a, algebra.meet(b, c)):
            report.distributivity.append((a, b, c))
        if algebra.meet(a, algebra.join(b, c)) != \
                algebra.join(algebra.meet(a, b), algebra.meet(a, c)):
            report.distributivity.append((a, b, c))
        if is_heyting:
            if algebra.leq(c, algebra.implies(a, b)) != algebra.leq(algebra.meet(c, a), b):
                report.adjunction.append((c, a, b))
    if is_heyting:
        for a in elems:
            if not algebra.leq(a, algebra.negate(algebra.negate(a))):
                report.double_negation.append((a,))
    return report


# -- two-dimensional subspace lattice ----------------------------------------

def ray_direction(dx, dy) -> tuple[int, int]:
    """Canonical primitive integer direction: lowest terms, first nonzero
    coordinate positive."""
    fx, fy = Fraction(dx), Fraction(dy)
    if fx == 0 and fy == 0:
        raise ValueError("zero vector spans no ray")
    scale = fx.denominator * fy.denominator
    ix, iy = int(fx * scale), int(fy * scale)
    from math import gcd
    g = gcd(abs(ix), abs(iy))
    ix, iy = ix // g, iy // g
    if ix < 0 or (ix == 0 and iy < 0):
        ix, iy = -ix, -iy
    return ix, iy


def ray_label(direction) -> str:
    dx, dy = ray_direction(*direction)
    return f"ray({dx},{dy})"


ZERO_SUBSPACE = "0"
FULL_PLANE = "plane"


def subspace_lattice_2d(directions: Iterable[tuple]) -> BoundedLattice:
    """Lattice of subspaces of the rational plane restricted to a finite set
    of rays: the zero subspace, the given rays, and the full plane.

    Meets are intersections and joins are linear spans; with two or more
    distinct rays the lattice is not distributive, which
    `check_heyting_laws` reports as violations.
    """
    rays = sorted({ray_label(d) for d in directions})
    elems = [ZERO_SUBSPACE] + rays + [FULL_PLANE]

    def leq(a, b):
        return a == b or a == ZERO_SUBSPACE or b == FULL_PLANE

    return BoundedLattice(elems, leq)
