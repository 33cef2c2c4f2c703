"""Abstract value domain for the dataflow analyses.

A small lattice over the subject language's values: exact/any numbers,
finite string sets, lists of string literals (with an unknown-element flag),
record shapes, declared string enumerations, and Top. join is total and
monotone; leq is the induced concretization ordering used by the property
tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class ExactNum:
    value: Fraction


@dataclass(frozen=True)
class AnyNum:
    pass


@dataclass(frozen=True)
class StrLits:
    values: frozenset  # nonempty

    def __post_init__(self):
        if not self.values:
            raise ValueError("StrLits requires a nonempty set")


@dataclass(frozen=True)
class AnyStr:
    pass


@dataclass(frozen=True)
class ListOfStrLits:
    values: frozenset = frozenset()
    may_contain_unknown: bool = False


@dataclass(frozen=True)
class RecordShape:
    fields: tuple = ()  # sorted (name, AbstractValue) pairs

    def __post_init__(self):
        object.__setattr__(self, "fields", tuple(sorted(self.fields)))

    def field_map(self) -> dict:
        return dict(self.fields)


@dataclass(frozen=True)
class EnumStr:
    """A declared enumeration constraint; concretizes like StrLits."""

    values: frozenset

    def __post_init__(self):
        if not self.values:
            raise ValueError("EnumStr requires a nonempty set")


@dataclass(frozen=True)
class Top:
    pass


TOP = Top()


def _string_set(av):
    if isinstance(av, StrLits):
        return av.values
    if isinstance(av, EnumStr):
        return av.values
    return None


def join(a, b):
    """Least over-approximation of both values (total, monotone)."""
    if a == b:
        return a
    if isinstance(a, Top) or isinstance(b, Top):
        return TOP
    if isinstance(a, (ExactNum, AnyNum)) and isinstance(b, (ExactNum, AnyNum)):
        return AnyNum()
    sa, sb = _string_set(a), _string_set(b)
    if sa is not None and sb is not None:
        return StrLits(sa | sb)
    if isinstance(a, (StrLits, EnumStr, AnyStr)) and isinstance(b, (StrLits, EnumStr, AnyStr)):
        return AnyStr()
    if isinstance(a, ListOfStrLits) and isinstance(b, ListOfStrLits):
        return ListOfStrLits(
            a.values | b.values,
            a.may_contain_unknown or b.may_contain_unknown)
    if isinstance(a, RecordShape) and isinstance(b, RecordShape):
        fa, fb = a.field_map(), b.field_map()
        if set(fa) != set(fb):
            return TOP
        return RecordShape(tuple((k, join(fa[k], fb[k])) for k in sorted(fa)))
    return TOP


def leq(a, b) -> bool:
    """True iff every concrete value described by a is described by b."""
    if a == b or isinstance(b, Top):
        return True
    if isinstance(a, Top):
        return False
    if isinstance(a, ExactNum):
        return isinstance(b, AnyNum)
    if isinstance(a, AnyNum):
        return False
    sa = _string_set(a)
    if sa is not None:
        if isinstance(b, AnyStr):
            return True
        sb = _string_set(b)
        return sb is not None and sa <= sb
    if isinstance(a, AnyStr):
        return False
    if isinstance(a, ListOfStrLits):
        return (isinstance(b, ListOfStrLits)
                and a.values <= b.values
                and (not a.may_contain_unknown or b.may_contain_unknown))
    if isinstance(a, RecordShape):
        if not isinstance(b, RecordShape):
            return False
        fa, fb = a.field_map(), b.field_map()
        return set(fa) == set(fb) and all(leq(fa[k], fb[k]) for k in fa)
    return False
