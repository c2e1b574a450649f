"""Sub-models, composition and decomposition."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence

from .errors import CompositionError, CycleError, EvalError, SubModelError
from .graph import find_cycle
from .model import Sfm


def extract_sub_sfm(model: Sfm, keep_nodes: Iterable[str], keep_as_endo: Iterable[str]) -> Sfm:
    """Sub-model over ``keep_nodes``; nodes in ``keep_as_endo`` keep their
    parents and function, every other kept node becomes exogenous."""
    model.require_valid()
    keep = [n for n in model.nodes if n in set(keep_nodes)]
    endo = set(keep_as_endo)
    unknown = (set(keep_nodes) | endo) - set(model.nodes)
    if unknown:
        raise SubModelError(f"unknown nodes {sorted(unknown)}")
    if not endo <= set(keep):
        raise SubModelError(f"endogenous nodes {sorted(endo - set(keep))} are not kept")
    for u in sorted(endo):
        if not model.parents(u):
            raise SubModelError(f"{u} is exogenous in the model and cannot stay endogenous")
        missing = set(model.parents(u)) - set(keep)
        if missing:
            raise SubModelError(f"parents {sorted(missing)} of {u} are not kept")
    edges = {(p, u) for u in endo for p in model.parents(u)}
    return Sfm(
        {n: model.domains[n] for n in keep},
        {u: model.functions[u] for u in keep if u in endo},
        edges,
    )


def is_sub_sfm(sub: Sfm, model: Sfm) -> bool:
    """Subgraph, same parents and functions for kept endogenous nodes, same domains."""
    if not set(sub.nodes) <= set(model.nodes) or not sub.edges <= model.edges:
        return False
    if any(sub.domains[n] != model.domains[n] for n in sub.nodes):
        return False
    for u in sub.nodes:
        if sub.parents(u):
            if set(sub.parents(u)) != set(model.parents(u)):
                return False
            if not functions_equal(sub, model, u):
                return False
    return True


def functions_equal(m1: Sfm, m2: Sfm, node: str) -> bool:
    """Extensional equality of F[node] when the parent product is finite,
    structural equality otherwise."""
    f1, f2 = m1.functions[node], m2.functions[node]
    if f1 == f2:
        return True
    parents = m1.parents(node)
    doms = [m1.domains[p] for p in parents]
    if set(parents) != set(m2.parents(node)) or not all(d.is_finite for d in doms):
        return False
    for combo in itertools.product(*[d.values for d in doms]):
        env = dict(zip(parents, combo))
        try:
            if f1(env) != f2(env):
                return False
        except EvalError:
            return False
    return True


def compose(parts: Sequence[Sfm]) -> Sfm:
    """Union of pairwise-consistent parts; the union must itself be acyclic."""
    if not parts:
        raise CompositionError("nothing to compose")
    for i, j in itertools.combinations(range(len(parts)), 2):
        a, b = parts[i], parts[j]
        for u in sorted(set(a.nodes) & set(b.nodes)):
            if a.domains[u] != b.domains[u]:
                raise CompositionError(f"parts #{i} and #{j} disagree on the domain of {u}")
            if a.parents(u) and b.parents(u):
                if set(a.parents(u)) != set(b.parents(u)):
                    raise CompositionError(f"parts #{i} and #{j} disagree on the parents of {u}")
                if not functions_equal(a, b, u):
                    raise CompositionError(f"parts #{i} and #{j} disagree on the function of {u}")
    domains, functions, edges = {}, {}, set()
    for p in parts:
        for n in p.nodes:
            domains.setdefault(n, p.domains[n])
        for n, f in p.functions.items():
            functions.setdefault(n, f)
        edges |= p.edges
    cycle = find_cycle(domains, edges)
    if cycle:
        raise CycleError(cycle)
    return Sfm(domains, functions, edges)


def decompose(model: Sfm) -> list[Sfm]:
    """Most fragmented decomposition: one fragment per endogenous node and its
    parents, plus a single-node fragment for each exogenous node no endogenous
    node reads (so that composing the fragments gives back the model)."""
    model.require_valid()
    if not model.endo:
        return [model]
    frags = [extract_sub_sfm(model, set(model.parents(u)) | {u}, {u}) for u in model.endo]
    for n in model.exo:
        if not model.children(n):
            frags.append(Sfm({n: model.domains[n]}))
    return frags
