"""Scalar values, domains and assignments.

Values carry an explicit tag so that ``True``, ``1`` and ``Fraction(1)`` stay
distinct: Python would otherwise hash them together and silently merge
domain entries or dictionary keys.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from fractions import Fraction

from .errors import AssignmentError, DomainError

BOOL, INT, RAT, SYM = "bool", "int", "rat", "sym"

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
# words the DSL reserves; symbols spelled like these are quoted when printed
KEYWORDS = frozenset(
    "model node exo endo parents domain real expr table default actual tweak "
    "vfi csp known targets expect cause effect answer holds fd include "
    "if then else true false".split()
)


class Value:
    """A tagged scalar: boolean, integer, exact rational or symbol."""

    __slots__ = ("tag", "payload", "_hash")

    def __init__(self, tag: str, payload):
        if tag == BOOL:
            payload = bool(payload)
        elif tag == INT:
            if isinstance(payload, bool) or not isinstance(payload, int):
                raise TypeError(f"integer payload expected, got {payload!r}")
        elif tag == RAT:
            payload = Fraction(payload)
        elif tag == SYM:
            if not isinstance(payload, str) or not payload:
                raise TypeError(f"symbol payload must be a nonempty str, got {payload!r}")
        else:
            raise ValueError(f"unknown value tag {tag!r}")
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "payload", payload)
        object.__setattr__(self, "_hash", hash((tag, payload)))

    def __setattr__(self, name, value):
        raise AttributeError("Value is immutable")

    def __eq__(self, other):
        if not isinstance(other, Value):
            return NotImplemented
        return self.tag == other.tag and self.payload == other.payload

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Value({self.tag}, {self.payload!r})"

    def __str__(self):
        return self.literal()

    def __reduce__(self):
        return (Value, (self.tag, self.payload))

    def literal(self, force_ratio: bool = False) -> str:
        """Render as a DSL literal.

        Rationals with unit denominator print as plain integers unless
        ``force_ratio`` is set; binding them to a rational-valued node
        restores the tag.
        """
        if self.tag == BOOL:
            return "true" if self.payload else "false"
        if self.tag == INT:
            return str(self.payload)
        if self.tag == RAT:
            q = self.payload
            if q.denominator == 1 and not force_ratio:
                return str(q.numerator)
            return f"{q.numerator}/{q.denominator}"
        if _IDENT.match(self.payload) and self.payload not in KEYWORDS:
            return self.payload
        return '"' + self.payload.replace("\\", "\\\\").replace('"', '\\"') + '"'

    @property
    def is_numeric(self) -> bool:
        return self.tag in (INT, RAT)

    def sort_key(self):
        return (self.tag, self.payload)


def value(x) -> Value:
    """Convert a Python scalar to a :class:`Value` (``Value`` passes through)."""
    if isinstance(x, Value):
        return x
    if isinstance(x, bool):
        return Value(BOOL, x)
    if isinstance(x, int):
        return Value(INT, x)
    if isinstance(x, Fraction):
        return Value(RAT, x)
    if isinstance(x, str):
        return Value(SYM, x)
    raise TypeError(f"cannot convert {x!r} to a model value")


def rat(x) -> Value:
    return Value(RAT, Fraction(x))


class Domain:
    """Either a finite, ordered, duplicate-free value list or the real line.

    The real line only admits exact rationals (integers are promoted on
    binding) and never takes part in enumeration.
    """

    __slots__ = ("values", "_members")

    def __init__(self, values=None):
        if values is None:
            self.values = None
            self._members = None
            return
        vals = tuple(value(v) for v in values)
        if not vals:
            raise DomainError("finite domain must be nonempty")
        members = frozenset(vals)
        if len(members) != len(vals):
            raise DomainError(f"duplicate values in domain {[str(v) for v in vals]}")
        self.values = vals
        self._members = members

    @classmethod
    def finite(cls, values: Iterable) -> Domain:
        return cls(list(values))

    @classmethod
    def real(cls) -> Domain:
        return cls(None)

    @classmethod
    def range(cls, lo: int, hi: int) -> Domain:
        """Integers ``lo..hi`` inclusive."""
        return cls(list(range(lo, hi + 1)))

    @property
    def is_finite(self) -> bool:
        return self.values is not None

    def __len__(self):
        if self.values is None:
            raise DomainError("real-line domain has no size")
        return len(self.values)

    def __iter__(self) -> Iterator[Value]:
        if self.values is None:
            raise DomainError("real-line domain cannot be enumerated")
        return iter(self.values)

    def __contains__(self, v) -> bool:
        v = value(v)
        if self.values is None:
            return v.tag == RAT
        return v in self._members

    def coerce(self, v) -> Value:
        """Return ``v`` as a member of this domain, promoting integers to
        rationals where the domain holds rationals. Raises DomainError."""
        v = value(v)
        if self.values is None:
            if v.tag == RAT:
                return v
            if v.tag == INT:
                return rat(v.payload)
            raise DomainError(f"{v} is not a rational number")
        if v in self._members:
            return v
        if v.tag == INT:
            r = rat(v.payload)
            if r in self._members:
                return r
        raise DomainError(f"{v} not in domain {self}")

    def __eq__(self, other):
        if not isinstance(other, Domain):
            return NotImplemented
        return self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"Domain({self})"

    def __str__(self):
        if self.values is None:
            return "real"
        return "{" + ", ".join(v.literal(force_ratio=True) for v in self.values) + "}"


class Assignment(Mapping):
    """Immutable, hashable map from node name to :class:`Value`.

    Iteration follows insertion order (used for rendering); equality and
    hashing ignore it.
    """

    __slots__ = ("_data", "_hash")

    def __init__(self, bindings=(), **kw):
        data = {}
        items = bindings.items() if isinstance(bindings, Mapping) else bindings
        for k, v in items:
            data[_node_name(k)] = value(v)
        for k, v in kw.items():
            data[k] = value(v)
        self._data = data
        self._hash = None

    def __getitem__(self, key):
        return self._data[key]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __contains__(self, key):
        return key in self._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._data.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Assignment):
            return self._data == other._data
        if isinstance(other, Mapping):
            try:
                return self._data == Assignment(other)._data
            except TypeError:
                return False
        return NotImplemented

    def __repr__(self):
        return f"Assignment({format_assignment(self)})"

    def __str__(self):
        return format_assignment(self)

    def __reduce__(self):
        return (Assignment, (list(self._data.items()),))

    @property
    def nodes(self) -> frozenset:
        return frozenset(self._data)

    def restrict(self, nodes: Iterable[str]) -> Assignment:
        """Restriction to ``nodes`` (order follows ``nodes``; absent ones skipped)."""
        return Assignment([(n, self._data[n]) for n in nodes if n in self._data])

    def merge(self, other: Mapping) -> Assignment:
        """Copy with ``other``'s bindings overriding ours."""
        data = dict(self._data)
        for k, v in other.items():
            data[k] = value(v)
        return Assignment(data)

    def extends(self, fragment: Mapping) -> bool:
        """True iff every binding of ``fragment`` also appears here."""
        return all(self._data.get(k) == value(v) for k, v in fragment.items())

    def ordered(self, order: Iterable[str]) -> Assignment:
        """Same bindings, iteration order following ``order``."""
        order = [n for n in order if n in self._data]
        rest = [n for n in self._data if n not in set(order)]
        return Assignment([(n, self._data[n]) for n in order + rest])


def _node_name(k) -> str:
    if not isinstance(k, str) or not k:
        raise AssignmentError(f"node names must be nonempty strings, got {k!r}")
    return k


def format_assignment(a: Mapping) -> str:
    """``{Node:val, ...}`` in the mapping's iteration order."""
    return "{" + ", ".join(f"{k}:{value(v)}" for k, v in a.items()) + "}"


def is_identifier(name: str) -> bool:
    return bool(_IDENT.match(name)) and name not in KEYWORDS
