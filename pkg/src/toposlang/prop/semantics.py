"""Heyting-valued and classical representations of propositional formulas.

A representation assigns each primitive leaf an element of a Heyting
algebra and pushes the connectives onto the algebra's operations.  The
classical representation of a finite-state system interprets "A in D" as
the preimage of D under the quantity's value table, inside the Boolean
powerset algebra of states; a state then assigns each formula a two-valued
truth value by direct recursion.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import InputError, ToposlangError
from ..heyting import HeytingAlgebra, powerset_algebra
from ..intervals import IntervalSet
from .syntax import And, Atom, Formula, Implies, Not, Or, Prim, leaves


class SemanticsError(ToposlangError):
    pass


def pl_represent(formula: Formula, assignment: Mapping, algebra: HeytingAlgebra):
    """Evaluate a formula in an algebra, given elements for its leaves.

    Conjunction, disjunction, negation and implication land on the algebra's
    meet, join, pseudo-complement and relative pseudo-complement.
    """
    def walk(n):
        if isinstance(n, (Prim, Atom)):
            if n not in assignment:
                raise SemanticsError(f"unassigned primitive {n!r}")
            return assignment[n]
        if isinstance(n, Not):
            return algebra.negate(walk(n.operand))
        if isinstance(n, And):
            return algebra.meet(walk(n.left), walk(n.right))
        if isinstance(n, Or):
            return algebra.join(walk(n.left), walk(n.right))
        if isinstance(n, Implies):
            return algebra.implies(walk(n.left), walk(n.right))
        raise TypeError(f"not a formula node: {n!r}")

    return walk(formula)


@dataclass(frozen=True)
class ClassicalSystem:
    """Finite state set with exact rational value tables per quantity."""
    states: tuple[str, ...]
    quantities: Mapping[str, Mapping[str, Fraction]]

    def __post_init__(self):
        for name, table in self.quantities.items():
            missing = set(self.states) - set(table)
            if missing:
                raise InputError(
                    f"quantity {name!r} is not total: missing {sorted(missing)}")

    def value(self, quantity: str, state: str) -> Fraction:
        if quantity not in self.quantities:
            raise InputError(f"unknown quantity name {quantity!r}")
        if state not in self.quantities[quantity]:
            raise InputError(f"unknown state {state!r}")
        return Fraction(self.quantities[quantity][state])


@dataclass(frozen=True)
class ClassicalRep:
    """Powerset-of-states algebra plus the preimage assignment of primitives."""
    system: ClassicalSystem
    algebra: HeytingAlgebra

    def preimage(self, quantity: str, delta: IntervalSet) -> frozenset:
        if quantity not in self.system.quantities:
            raise InputError(f"unknown quantity name {quantity!r}")
        return frozenset(s for s in self.system.states
                         if delta.member(self.system.value(quantity, s)))

    def assign(self, prim: Prim) -> frozenset:
        if not isinstance(prim, Prim):
            raise SemanticsError(
                f"classical representation needs concrete primitives, got {prim!r}")
        return self.preimage(prim.quantity, prim.delta)

    def represent(self, formula: Formula) -> frozenset:
        assignment = {leaf: self.assign(leaf) for leaf in leaves(formula)}
        return pl_represent(formula, assignment, self.algebra)


def classical_rep(system: ClassicalSystem) -> ClassicalRep:
    return ClassicalRep(system, powerset_algebra(system.states))


def truth_value(formula: Formula, state: str, system: ClassicalSystem) -> int:
    """Two-valued truth at a state: a primitive holds iff the quantity's
    value lies in the interval set; connectives evaluate classically."""
    if state not in system.states:
        raise InputError(f"unknown state {state!r}")

    def walk(n) -> int:
        if isinstance(n, Prim):
            return 1 if n.delta.member(system.value(n.quantity, state)) else 0
        if isinstance(n, Atom):
            raise SemanticsError(f"abstract atom {n.name!r} has no classical truth value")
        if isinstance(n, Not):
            return 1 - walk(n.operand)
        if isinstance(n, And):
            return min(walk(n.left), walk(n.right))
        if isinstance(n, Or):
            return max(walk(n.left), walk(n.right))
        if isinstance(n, Implies):
            return max(1 - walk(n.left), walk(n.right))
        raise TypeError(f"not a formula node: {n!r}")

    return walk(formula)


# -- the optional interval axioms, verified per representation ------------------

@dataclass
class OptionalAxiomReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def sample_interval_sets(system: ClassicalSystem, *, seed: int = 0,
                         per_quantity: int = 12) -> Mapping[str, list[IntervalSet]]:
    """Deterministic interval samples that straddle each quantity's attained
    values: brackets between consecutive values, half-lines, the empty set
    and the full line."""
    rng = random.Random(seed)
    out = {}
    for name, table in system.quantities.items():
        values = sorted({Fraction(v) for v in table.values()})
        deltas = [IntervalSet.empty(), IntervalSet.full()]
        for v in values:
            deltas.append(IntervalSet.point(v))
            deltas.append(IntervalSet.interval(None, False, v, True))
            deltas.append(IntervalSet.interval(v, False, None, False))
        for lo, hi in zip(values, values[1:]):
            deltas.append(IntervalSet.interval(lo, True, hi, False))
        while len(deltas) < per_quantity + 2:
            lo = rng.choice(values) - Fraction(rng.randint(0, 3), rng.randint(1, 4))
            hi = lo + Fraction(rng.randint(0, 5), rng.randint(1, 3))
            deltas.append(IntervalSet.interval(lo, bool(rng.getrandbits(1)),
                                               hi, bool(rng.getrandbits(1))))
        out[name] = deltas
    return out


def check_optional_axioms(system: ClassicalSystem, *, seed: int = 0,
                          deltas: Mapping[str, Sequence[IntervalSet]] | None = None
                          ) -> OptionalAxiomReport:
    """Verify that preimages turn interval intersection, union and complement
    into state-set intersection, union and complement, for sampled interval
    pairs over every quantity.  Classically none of these can fail; failures
    are report content for broken inputs, not exceptions."""
    rep = classical_rep(system)
    if deltas is None:
        deltas = sample_interval_sets(system, seed=seed)
    report = OptionalAxiomReport()
    everything = frozenset(system.states)
    for name, ds in deltas.items():
        for d1 in ds:
            p1 = rep.preimage(name, d1)
            comp = everything - p1
            if rep.preimage(name, d1.complement()) != comp:
                report.failures.append(("complement", name, str(d1)))
            report.checked += 1
            for d2 in ds:
                p2 = rep.preimage(name, d2)
                if p1 & p2 != rep.preimage(name, d1.intersect(d2)):
                    report.failures.append(("conjunction", name, str(d1), str(d2)))
                if p1 | p2 != rep.preimage(name, d1.union(d2)):
                    report.failures.append(("disjunction", name, str(d1), str(d2)))
                report.checked += 2
    return report
