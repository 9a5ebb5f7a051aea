"""Canonical ordering and JSON projection for heterogeneous element values.

Stage elements throughout the toolkit are plain hashables: strings, ints,
exact rationals, tuples and frozensets. A single total order keeps every
enumeration deterministic, which in turn keeps printed output byte-stable.
"""
from __future__ import annotations

from fractions import Fraction

_KEY_CACHE: dict = {}


def canon_key(value):
    """Total order key over the element kinds the engine produces.

    Numbers order by value with an exact rational tie-break, so ints and
    equal Fractions share a key.  Keys of structured values are memoized:
    the same stage elements get sorted many times across enumerations.
    """
    if isinstance(value, str):
        return (1, value)
    if isinstance(value, int) and not isinstance(value, bool):
        return (0, value, value, 1)
    cached = _KEY_CACHE.get(value)
    if cached is not None:
        return cached
    if isinstance(value, bool):
        key = (0, int(value), int(value), 1)
    elif isinstance(value, Fraction):
        key = (0, float(value), value.numerator, value.denominator)
    elif isinstance(value, tuple):
        key = (2, tuple(canon_key(v) for v in value))
    elif isinstance(value, frozenset):
        key = (3, tuple(sorted(canon_key(v) for v in value)))
    else:
        raise TypeError(f"no canonical order for {type(value).__name__}")
    _KEY_CACHE[value] = key
    return key


def canon_sorted(values):
    return sorted(values, key=canon_key)


def jsonable(value):
    """Project an element to JSON-compatible data.

    Rationals print in lowest terms ("5/2", "4"); the empty tuple is the
    terminal-object point and prints as "*"; frozensets print as sorted lists.
    """
    if value == ():
        return "*"
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    if isinstance(value, str):
        return value
    if isinstance(value, tuple):
        return [jsonable(v) for v in value]
    if isinstance(value, frozenset):
        return [jsonable(v) for v in canon_sorted(value)]
    raise TypeError(f"not JSON-projectable: {type(value).__name__}")
