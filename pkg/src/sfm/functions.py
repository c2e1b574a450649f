"""Structural functions: lookup tables and expression trees over parents.

Expression semantics:

* ``+ - *`` and unary ``-`` work on integers and rationals; mixing the two
  yields a rational. ``^`` takes a nonnegative integer literal exponent.
* ``! & |`` accept either booleans or the integers 0/1 (not mixed) and keep
  the operand kind, so ``!A | B`` over ``{0, 1}`` nodes stays in ``{0, 1}``.
* ``==``/``!=`` compare numbers by numeric value and everything else by
  tagged identity; ``< <= > >=`` need numbers. All comparisons give booleans.
* ``if c then a else b`` takes a boolean or 0/1 condition.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import EvalError
from .values import BOOL, INT, RAT, Value, value


# --- expression AST -------------------------------------------------------

@dataclass(frozen=True)
class Lit:
    value: Value


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "!" or "-"
    arg: object


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class IfElse:
    cond: object
    then: object
    orelse: object


ARITH = ("+", "-", "*")
LOGIC = ("&", "|")
COMPARE = ("==", "!=", "<", "<=", ">", ">=")


def refs(node) -> set[str]:
    """Names referenced anywhere in an expression tree."""
    if isinstance(node, Ref):
        return {node.name}
    if isinstance(node, Lit):
        return set()
    if isinstance(node, Unary):
        return refs(node.arg)
    if isinstance(node, Binary):
        return refs(node.left) | refs(node.right)
    if isinstance(node, IfElse):
        return refs(node.cond) | refs(node.then) | refs(node.orelse)
    raise TypeError(f"not an expression node: {node!r}")


def _num(v: Value, op: str):
    if not v.is_numeric:
        raise EvalError(f"operator {op!r} needs a number, got {v}")
    return v.payload


def _numeric_result(x, tags) -> Value:
    if RAT in tags:
        return Value(RAT, Fraction(x))
    return Value(INT, int(x))


def _truth(v: Value, op: str) -> bool:
    if v.tag == BOOL:
        return v.payload
    if v.tag == INT and v.payload in (0, 1):
        return v.payload == 1
    raise EvalError(f"operator {op!r} needs a boolean or 0/1, got {v}")


def _logic_kind(a: Value, b: Value, op: str) -> str:
    _truth(a, op), _truth(b, op)
    if a.tag != b.tag:
        raise EvalError(f"operator {op!r} mixes {a} and {b}")
    return a.tag


def _as_truth(flag: bool, tag: str) -> Value:
    return Value(BOOL, flag) if tag == BOOL else Value(INT, int(flag))


def _values_equal(a: Value, b: Value) -> bool:
    if a.is_numeric and b.is_numeric:
        return a.payload == b.payload
    return a == b


def evaluate(node, env: Mapping[str, Value]) -> Value:
    """Evaluate an expression tree; ``env`` maps parent names to values."""
    if isinstance(node, Lit):
        return node.value
    if isinstance(node, Ref):
        try:
            return env[node.name]
        except KeyError:
            raise EvalError(f"unbound reference {node.name!r}") from None
    if isinstance(node, Unary):
        a = evaluate(node.arg, env)
        if node.op == "!":
            return _as_truth(not _truth(a, "!"), a.tag)
        if node.op == "-":
            return _numeric_result(-_num(a, "-"), {a.tag})
        raise EvalError(f"unknown unary operator {node.op!r}")
    if isinstance(node, IfElse):
        c = evaluate(node.cond, env)
        return evaluate(node.then if _truth(c, "if") else node.orelse, env)
    if not isinstance(node, Binary):
        raise EvalError(f"not an expression node: {node!r}")

    op = node.op
    a = evaluate(node.left, env)
    if op in LOGIC:
        # no short-circuit: both sides must be well-typed for totality
        b = evaluate(node.right, env)
        kind = _logic_kind(a, b, op)
        ta, tb = _truth(a, op), _truth(b, op)
        return _as_truth((ta and tb) if op == "&" else (ta or tb), kind)
    b = evaluate(node.right, env)
    if op in ARITH:
        x, y = _num(a, op), _num(b, op)
        r = x + y if op == "+" else x - y if op == "-" else x * y
        return _numeric_result(r, {a.tag, b.tag})
    if op == "^":
        base = _num(a, "^")
        if b.tag != INT or b.payload < 0:
            raise EvalError(f"exponent must be a nonnegative integer, got {b}")
        return _numeric_result(base ** b.payload, {a.tag})
    if op == "==":
        return Value(BOOL, _values_equal(a, b))
    if op == "!=":
        return Value(BOOL, not _values_equal(a, b))
    if op in COMPARE:
        x, y = _num(a, op), _num(b, op)
        res = {"<": x < y, "<=": x <= y, ">": x > y, ">=": x >= y}[op]
        return Value(BOOL, res)
    raise EvalError(f"unknown operator {op!r}")


# --- structural functions -------------------------------------------------

class Table:
    """Explicit lookup table keyed by parent-value tuples (in ``parents`` order)."""

    kind = "table"

    def __init__(self, parents: Sequence[str], rows: Mapping):
        self.parents = tuple(parents)
        table = {}
        for key, out in rows.items():
            if not isinstance(key, tuple):
                key = (key,)
            table[tuple(value(k) for k in key)] = value(out)
        self.rows = table

    def __call__(self, env: Mapping[str, Value]) -> Value:
        key = tuple(env[p] for p in self.parents)
        try:
            return self.rows[key]
        except KeyError:
            shown = ", ".join(f"{p}:{v}" for p, v in zip(self.parents, key))
            raise EvalError(f"table has no row for ({shown})") from None

    def __eq__(self, other):
        if not isinstance(other, Table):
            return NotImplemented
        return set(self.parents) == set(other.parents) and self._canonical() == other._canonical()

    def __hash__(self):
        return hash(frozenset(self._canonical().items()))

    def _canonical(self):
        idx = sorted(range(len(self.parents)), key=lambda i: self.parents[i])
        return {tuple((self.parents[i], k[i]) for i in idx): v for k, v in self.rows.items()}

    def __repr__(self):
        return f"Table(parents={list(self.parents)}, rows={len(self.rows)})"

    @classmethod
    def from_callable(cls, parents: Sequence[str], domains: Sequence, fn) -> Table:
        """Tabulate ``fn(*parent_values)`` (plain Python values) over the parents' product."""
        rows = {}
        for key in itertools.product(*[list(d) for d in domains]):
            rows[key] = value(fn(*[_plain(v) for v in key]))
        return cls(parents, rows)


class Expr:
    """Expression tree over parent references."""

    kind = "expr"

    def __init__(self, parents: Sequence[str], body):
        self.parents = tuple(parents)
        self.body = body

    def __call__(self, env: Mapping[str, Value]) -> Value:
        return evaluate(self.body, env)

    @property
    def references(self) -> set[str]:
        return refs(self.body)

    def __eq__(self, other):
        if not isinstance(other, Expr):
            return NotImplemented
        return set(self.parents) == set(other.parents) and self.body == other.body

    def __hash__(self):
        return hash((frozenset(self.parents), self.body))

    def __repr__(self):
        from .dsl import format_expr

        return f"Expr(parents={list(self.parents)}, {format_expr(self.body)!r})"


def _plain(v: Value):
    return v.payload


def expr(parents: Sequence[str], text: str) -> Expr:
    """Build an :class:`Expr` from DSL expression text, e.g. ``expr(["A"], "A ^ 2")``."""
    from .dsl import parse_expr

    return Expr(parents, parse_expr(text))
