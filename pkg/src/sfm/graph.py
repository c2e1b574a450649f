"""Plain directed-graph utilities: ordering, cycles, reachability, GMT witnesses."""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass

from .errors import CycleError


def _adjacency(nodes, edges):
    children = {n: set() for n in nodes}
    parents = {n: set() for n in nodes}
    for u, v in edges:
        children.setdefault(u, set()).add(v)
        parents.setdefault(v, set()).add(u)
        children.setdefault(v, set())
        parents.setdefault(u, set())
    return children, parents


def topological_order(nodes: Iterable[str], edges: Iterable[tuple[str, str]]) -> list[str]:
    """Kahn's algorithm, processed in generations.

    Every node whose in-degree has dropped to zero joins the next generation;
    each generation is emitted in lexicographic order. Raises CycleError with
    a witness cycle if the graph is cyclic.
    """
    edges = list(edges)
    children, parents = _adjacency(nodes, edges)
    indeg = {n: len(ps) for n, ps in parents.items()}
    ready = sorted(n for n, d in indeg.items() if d == 0)
    order = []
    while ready:
        order.extend(ready)
        nxt = []
        for u in ready:
            for v in children[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    nxt.append(v)
        ready = sorted(nxt)
    if len(order) != len(indeg):
        remaining = {n for n, d in indeg.items() if d > 0}
        raise CycleError(_cycle_within(remaining, parents))
    return order


def _cycle_within(candidates, parents):
    """Walk predecessors inside ``candidates`` (all of which lie on or below a
    cycle) until a node repeats; return the cycle in edge direction."""
    start = min(candidates)
    walk = [start]
    seen = {start: 0}
    cur = start
    while True:
        cur = min(p for p in parents[cur] if p in candidates)
        if cur in seen:
            back = walk[seen[cur]:] + [cur]
            return back[::-1]
        seen[cur] = len(walk)
        walk.append(cur)


def find_cycle(nodes, edges) -> list[str] | None:
    try:
        topological_order(nodes, edges)
    except CycleError as e:
        return e.cycle
    return None


def descendants(children: dict, sources: Iterable[str]) -> set[str]:
    """Nodes reachable from ``sources`` (sources included)."""
    out = set()
    stack = list(sources)
    while stack:
        u = stack.pop()
        if u in out:
            continue
        out.add(u)
        stack.extend(children.get(u, ()))
    return out


def ancestors(parents: dict, targets: Iterable[str]) -> set[str]:
    """Nodes from which some target is reachable (targets included)."""
    return descendants(parents, targets)


@dataclass(frozen=True)
class Root:
    node: str

    def __str__(self):
        return f"root: {self.node}"


@dataclass(frozen=True)
class Cycle:
    path: tuple[str, ...]

    def __str__(self):
        return "cycle: " + " ".join(self.path)


def gmt_witness(nodes: Iterable[str], edges: Iterable[tuple[str, str]]) -> Root | Cycle:
    """Every finite digraph has a root or a cycle; return one of them.

    Prefers the lexicographically smallest root. Without roots, every node has
    a predecessor, so walking predecessors from any node must revisit one.
    """
    nodes = set(nodes)
    edges = list(edges)
    for u, v in edges:
        nodes.add(u)
        nodes.add(v)
    if not nodes:
        raise ValueError("graph has no nodes")
    preds = defaultdict(set)
    for u, v in edges:
        preds[v].add(u)
    roots = sorted(n for n in nodes if not preds[n])
    if roots:
        return Root(roots[0])
    return Cycle(tuple(_cycle_within(nodes, preds)))


def verify_witness(nodes, edges, witness) -> bool:
    """Structural check of a GMT witness against the graph."""
    edges = set(edges)
    nodes = set(nodes) | {u for e in edges for u in e}
    if isinstance(witness, Root):
        return witness.node in nodes and not any(v == witness.node for _, v in edges)
    if isinstance(witness, Cycle):
        p = witness.path
        return (
            len(p) >= 2
            and p[0] == p[-1]
            and all((a, b) in edges for a, b in zip(p, p[1:]))
        )
    return False
