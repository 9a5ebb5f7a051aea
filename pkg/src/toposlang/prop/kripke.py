"""Finite Kripke models: the semantic side of the propositional logic engine.

A model is a finite poset of worlds with an upward-closed valuation per
primitive.  Forcing is the usual clause set: implication and negation
quantify over all later worlds, so monotonicity propagates automatically.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..errors import InputError
from .syntax import And, Atom, Formula, Implies, Not, Or, Prim, leaf_key


@dataclass(frozen=True)
class KripkeModel:
    worlds: tuple[str, ...]
    order: frozenset[tuple[str, str]]  # reflexive-transitive (w, v) pairs, w <= v
    valuation: Mapping[str, frozenset[str]]  # primitive key -> worlds forcing it

    def __post_init__(self):
        ws = set(self.worlds)
        for w in self.worlds:
            if (w, w) not in self.order:
                raise InputError(f"world order is not reflexive at {w!r}")
        for w, v in self.order:
            if w not in ws or v not in ws:
                raise InputError(f"order pair ({w!r}, {v!r}) mentions unknown world")
        for key, ups in self.valuation.items():
            for w in ups:
                for v in self.above(w):
                    if v not in ups:
                        raise InputError(
                            f"valuation of {key!r} is not upward closed at {w!r}")

    def above(self, w: str) -> tuple[str, ...]:
        return tuple(v for v in self.worlds if (w, v) in self.order)

    def forces(self, world: str, formula: Formula) -> bool:
        if isinstance(formula, (Prim, Atom)):
            return world in self.valuation.get(leaf_key(formula), frozenset())
        if isinstance(formula, And):
            return self.forces(world, formula.left) and self.forces(world, formula.right)
        if isinstance(formula, Or):
            return self.forces(world, formula.left) or self.forces(world, formula.right)
        if isinstance(formula, Implies):
            return all(not self.forces(v, formula.left) or self.forces(v, formula.right)
                       for v in self.above(world))
        if isinstance(formula, Not):
            return all(not self.forces(v, formula.operand) for v in self.above(world))
        raise TypeError(f"not a formula node: {formula!r}")

    def counterexample_world(self, formula: Formula) -> str | None:
        for w in self.worlds:
            if not self.forces(w, formula):
                return w
        return None

    def to_json(self) -> dict:
        return {
            "worlds": list(self.worlds),
            "order": sorted([w, v] for w, v in self.order if w != v),
            "valuation": {k: sorted(ws) for k, ws in sorted(self.valuation.items())},
        }
