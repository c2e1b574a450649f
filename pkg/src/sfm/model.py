"""The structural functional model type and its whole-model checks."""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from . import graph
from .errors import (
    AssignmentError,
    BudgetExceededError,
    CycleError,
    DomainError,
    EvalError,
    InvalidModelError,
    UnsupportedEnumerationError,
)
from .functions import Expr, Table
from .values import Assignment, Domain, Value

DEFAULT_BUDGET = 10**6


def as_domain(d) -> Domain:
    if isinstance(d, Domain):
        return d
    if d == "real":
        return Domain.real()
    return Domain.finite(d)


class Sfm:
    """A finite acyclic model: nodes, edges, per-node domains and one
    structural function per endogenous node.

    ``domains`` fixes the node set (declaration order is kept for printing).
    When ``edges`` is omitted it is derived from the functions' parent lists.
    Construction never fails on semantic problems; use :func:`validate`.
    """

    def __init__(self, domains: Mapping, functions: Mapping | None = None, edges=None):
        self.domains = {n: as_domain(d) for n, d in domains.items()}
        self.functions = dict(functions or {})
        if edges is None:
            edges = {(p, u) for u, f in self.functions.items() for p in f.parents}
        self.edges = frozenset((u, v) for u, v in edges)

    # -- structure ---------------------------------------------------------

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(self.domains)

    @cached_property
    def _parents(self) -> dict[str, tuple[str, ...]]:
        pa = {n: set() for n in self.domains}
        for u, v in self.edges:
            pa.setdefault(v, set()).add(u)
        out = {}
        for n, ps in pa.items():
            f = self.functions.get(n)
            if f is not None and set(f.parents) == ps:
                out[n] = f.parents
            else:
                out[n] = tuple(sorted(ps))
        return out

    @cached_property
    def _children(self) -> dict[str, tuple[str, ...]]:
        ch = {n: [] for n in self.domains}
        for u, v in self.edges:
            ch.setdefault(u, []).append(v)
        return {n: tuple(sorted(vs)) for n, vs in ch.items()}

    def parents(self, node: str) -> tuple[str, ...]:
        return self._parents[node]

    def children(self, node: str) -> tuple[str, ...]:
        return self._children[node]

    @cached_property
    def exo(self) -> tuple[str, ...]:
        """Root nodes, in topological order."""
        return tuple(n for n in self.order if not self._parents[n])

    @cached_property
    def endo(self) -> tuple[str, ...]:
        return tuple(n for n in self.order if self._parents[n])

    @cached_property
    def order(self) -> tuple[str, ...]:
        """Deterministic topological order (raises CycleError)."""
        return tuple(graph.topological_order(self.domains, self.edges))

    def descendants(self, nodes: Iterable[str]) -> set[str]:
        return graph.descendants(self._children, nodes)

    def ancestors(self, nodes: Iterable[str]) -> set[str]:
        return graph.ancestors(self._parents, nodes)

    @cached_property
    def report(self) -> ValidationReport:
        return validate(self)

    def require_valid(self) -> Sfm:
        if not self.report.ok:
            raise InvalidModelError(self.report)
        return self

    # -- assignments -------------------------------------------------------

    def assignment(self, bindings: Mapping) -> Assignment:
        """Bind values to nodes, checking domains (integers promote to
        rationals on rational-valued nodes). Result follows topological order
        when the graph is acyclic."""
        out = {}
        for k, v in Assignment(bindings).items():
            if k not in self.domains:
                raise AssignmentError(f"unknown node {k!r}")
            try:
                out[k] = self.domains[k].coerce(v)
            except DomainError as e:
                raise DomainError(f"{k}: {e}") from None
        a = Assignment(out)
        try:
            return a.ordered(self.order)
        except CycleError:
            return a

    def world(self, bindings: Mapping) -> Assignment:
        """Like :meth:`assignment` but the result must bind every node."""
        a = self.assignment(bindings)
        missing = [n for n in self.domains if n not in a]
        if missing:
            raise AssignmentError(f"incomplete world, missing {missing}")
        return a

    def exo_assignment(self, bindings: Mapping) -> Assignment:
        """Exactly the exogenous nodes, no more and no less."""
        a = self.assignment(bindings)
        extra = sorted(set(a) - set(self.exo))
        missing = [n for n in self.exo if n not in a]
        if extra:
            raise AssignmentError(f"not exogenous: {extra}")
        if missing:
            raise AssignmentError(f"missing exogenous values for {missing}")
        return a

    def evaluate(self, node: str, world: Mapping) -> Value:
        """Apply F[node] to the parents' values in ``world``; checks the output domain."""
        f = self.functions[node]
        out = f({p: world[p] for p in f.parents})
        try:
            return self.domains[node].coerce(out)
        except DomainError:
            raise EvalError(f"F[{node}] produced {out}, outside domain {self.domains[node]}") from None

    # -- equality ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Sfm):
            return NotImplemented
        return (
            set(self.domains) == set(other.domains)
            and self.edges == other.edges
            and self.domains == other.domains
            and self.functions == other.functions
        )

    def __hash__(self):
        return hash((frozenset(self.domains), self.edges))

    def __repr__(self):
        return f"Sfm(nodes={list(self.domains)}, edges={sorted(self.edges)})"


# --- validation -------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str
    subject: str
    message: str

    def __str__(self):
        return self.message


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    order: tuple[str, ...] | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(str(v) for v in self.violations)


def _product_size(domains) -> int:
    return math.prod(len(d) for d in domains)


def validate(model: Sfm, budget: int = DEFAULT_BUDGET) -> ValidationReport:
    """List every violated model invariant. Violations are data, not errors."""
    out = []

    def add(kind, subject, msg):
        out.append(Violation(kind, subject, msg))

    for u, v in sorted(model.edges):
        for n in (u, v):
            if n not in model.domains:
                add("unknown-node", n, f"edge ({u},{v}) references unknown node {n}")
    if any(v.kind == "unknown-node" for v in out):
        return ValidationReport(out)

    order = None
    try:
        order = model.order
    except CycleError as e:
        add("cycle", e.cycle[0], "cycle: " + ",".join(e.cycle))

    for n in model.domains:
        has_parents = bool(model.parents(n))
        f = model.functions.get(n)
        if not has_parents:
            if f is not None:
                add("exo-function", n, f"function given for exogenous node {n}")
            continue
        if f is None:
            add("missing-function", n, f"missing function at endogenous node {n}")
            continue
        if set(f.parents) != set(model.parents(n)) or len(set(f.parents)) != len(f.parents):
            add("parents-mismatch", n,
                f"declared parents {list(f.parents)} of {n} differ from graph parents {sorted(model.parents(n))}")
            continue
        _check_function(model, n, f, add, budget)
    for n in model.functions:
        if n not in model.domains:
            add("unknown-node", n, f"function given for unknown node {n}")
    return ValidationReport(out, order if not out else None)


def _check_function(model, n, f, add, budget):
    pdoms = [model.domains[p] for p in f.parents]
    finite = all(d.is_finite for d in pdoms)
    child = model.domains[n]
    if isinstance(f, Table):
        if not finite:
            add("table-real", n, f"table at {n} has a real-line parent")
            return
        for key, outv in f.rows.items():
            if len(key) != len(pdoms) or any(k not in d for k, d in zip(key, pdoms)):
                add("table-key", n, f"table row {tuple(str(k) for k in key)} at {n} outside parent domains")
                return
            if outv not in child:
                add("out-of-domain", n, f"table output {outv} at {n} outside domain {child}")
                return
        if len(f.rows) != _product_size(pdoms):
            add("table-total", n, f"table not left-total at {n}")
        return
    if isinstance(f, Expr):
        stray = f.references - set(f.parents)
        if stray:
            add("undeclared-reference", n, f"expression at {n} references non-parents {sorted(stray)}")
            return
        if not finite or _product_size(pdoms) > budget:
            return
        for key in itertools.product(*[d.values for d in pdoms]):
            env = dict(zip(f.parents, key))
            try:
                outv = f(env)
            except EvalError as e:
                add("eval", n, f"expression at {n} fails on {_fmt(env)}: {e}")
                return
            try:
                child.coerce(outv)
            except DomainError:
                add("out-of-domain", n, f"expression at {n} gives {outv} on {_fmt(env)}, outside domain {child}")
                return
        return
    add("function-kind", n, f"unsupported function object at {n}: {f!r}")


def _fmt(env):
    return "{" + ", ".join(f"{k}:{v}" for k, v in env.items()) + "}"


def topological_order(model: Sfm) -> list[str]:
    return list(model.order)


# --- worlds -----------------------------------------------------------------

def satisfies(model: Sfm, world: Mapping) -> bool:
    """True iff every endogenous node carries the value its function gives."""
    return not unsatisfied_nodes(model, world)


def unsatisfied_nodes(model: Sfm, world: Mapping) -> dict[str, tuple[Value, Value]]:
    """Endogenous nodes whose value disagrees with F, mapped to (given, computed)."""
    model.require_valid()
    w = model.world(world)
    extra = set(Assignment(world)) - set(model.domains)
    if extra:
        raise AssignmentError(f"unknown nodes {sorted(extra)}")
    bad = {}
    for u in model.endo:
        got = model.evaluate(u, w)
        if got != w[u]:
            bad[u] = (w[u], got)
    return bad


def check_budget(domains: Iterable[Domain], budget: int, what: str) -> int:
    doms = list(domains)
    if not all(d.is_finite for d in doms):
        raise UnsupportedEnumerationError(f"{what}: real-line domain cannot be enumerated")
    size = _product_size(doms)
    if size > budget:
        raise BudgetExceededError(f"{what}: {size} assignments exceed budget {budget}")
    return size


def exo_assignments(model: Sfm, budget: int = DEFAULT_BUDGET):
    """All exogenous assignments, in product order over the exo nodes."""
    model.require_valid()
    exo = model.exo
    check_budget((model.domains[n] for n in exo), budget, "exogenous product")
    for combo in itertools.product(*[model.domains[n].values for n in exo]):
        yield Assignment(zip(exo, combo))


def enumerate_team(model: Sfm, budget: int = DEFAULT_BUDGET):
    """All worlds satisfying the model: one forward inference per exo-assignment."""
    from .infer import vfi
    from .team import Team

    model.require_valid()
    check_budget((model.domains[n] for n in model.nodes), float("inf"), "team")
    worlds = [vfi(model, e).world for e in exo_assignments(model, budget)]
    return Team(worlds, nodes=model.nodes)


def is_permitted(model: Sfm, fragment: Mapping, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff some world of the model extends ``fragment``."""
    from .infer import csp_solve

    frag = model.assignment(fragment)
    return bool(csp_solve(model, frag, (), limit=1, budget=budget))
