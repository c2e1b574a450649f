"""Forward, contrastive, partial and constraint-based inference; contrasts and utterances."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import AssignmentError, BudgetExceededError, SfmError, UnsatisfiedWorldError
from .model import DEFAULT_BUDGET, Sfm, check_budget, unsatisfied_nodes
from .values import Assignment, format_assignment


@dataclass(frozen=True)
class InferResult:
    world: Assignment
    evals: dict = field(default_factory=dict)

    @property
    def total_evals(self) -> int:
        return sum(self.evals.values())


def vfi(model: Sfm, exo: Mapping) -> InferResult:
    """Evaluate every endogenous node once, in topological order."""
    model.require_valid()
    e = model.exo_assignment(exo)
    world = dict(e)
    evals = {}
    for u in model.order:
        if u in world:
            continue
        world[u] = model.evaluate(u, world)
        evals[u] = 1
    return InferResult(Assignment(world).ordered(model.order), evals)


def _require_satisfying(model: Sfm, world: Mapping, role: str) -> Assignment:
    w = model.world(world)
    bad = unsatisfied_nodes(model, w)
    if bad:
        u, (given, computed) = next(iter(bad.items()))
        raise UnsatisfiedWorldError(
            f"{role} world does not satisfy the model at {u}: has {given}, function gives {computed}",
            diff=bad,
        )
    return w


def cfi(model: Sfm, reference: Mapping, new_exo: Mapping) -> InferResult:
    """Re-evaluate only nodes with at least one changed parent.

    ``reference`` must satisfy the model; ``new_exo`` binds any subset of the
    exogenous nodes. A recomputed node whose value comes out unchanged does not
    mark its children dirty.
    """
    model.require_valid()
    w0 = _require_satisfying(model, reference, "reference")
    x = model.assignment(new_exo)
    not_exo = sorted(set(x) - set(model.exo))
    if not_exo:
        raise AssignmentError(f"new exogenous values bind endogenous nodes {not_exo}")

    changed = {u: (u in x and x[u] != w0[u]) for u in model.nodes}
    w1 = {}
    evals = {u: 0 for u in model.endo}
    for u in model.order:
        parents = model.parents(u)
        dirty = changed[u] or any(changed[p] for p in parents)
        if not dirty:
            w1[u] = w0[u]
        elif not parents:
            w1[u] = x[u]
        else:
            val = model.evaluate(u, w1)
            evals[u] += 1
            if val != w0[u]:
                w1[u] = val
                changed[u] = True
            else:
                w1[u] = w0[u]
    return InferResult(Assignment(w1).ordered(model.order), evals)


def partial_fi(model: Sfm, exo: Mapping, targets: Iterable[str]) -> InferResult:
    """Forward inference restricted to the ancestors of ``targets``.

    The returned world binds the targets only; ``evals`` records which
    endogenous nodes were computed.
    """
    model.require_valid()
    e = model.exo_assignment(exo)
    targets = list(dict.fromkeys(targets))
    unknown = [t for t in targets if t not in model.domains]
    if unknown:
        raise AssignmentError(f"unknown target nodes {unknown}")
    needed = model.ancestors(targets)
    world = dict(e)
    evals = {u: 0 for u in model.endo}
    for u in model.order:
        if u in world or u not in needed:
            continue
        world[u] = model.evaluate(u, world)
        evals[u] = 1
    ordered = [u for u in model.order if u in set(targets)]
    return InferResult(Assignment((u, world[u]) for u in ordered), evals)


def csp_solve(
    model: Sfm,
    known: Mapping,
    targets: Iterable[str],
    limit: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[Assignment]:
    """All distinct target restrictions of worlds extending ``known``.

    Backtracking over nodes in topological order and values in declaration
    order. Known values are unary constraints checked as soon as their node
    is reached; each endogenous node's structural equation admits exactly the
    value its function gives, so the branching happens on exogenous nodes only.
    ``limit`` caps the number of returned solutions.
    """
    model.require_valid()
    if limit is not None and limit <= 0:
        raise SfmError("limit must be positive")
    check_budget(model.domains.values(), float("inf"), "constraint search")
    k = model.assignment(known)
    targets = list(dict.fromkeys(targets))
    unknown = [t for t in targets if t not in model.domains]
    if unknown:
        raise AssignmentError(f"unknown target nodes {unknown}")
    tset = set(targets)
    tord = [u for u in model.order if u in tset]
    order = model.order
    found: list[Assignment] = []
    seen = set()
    world = {}
    steps = [0]

    def search(i):
        if limit is not None and len(found) >= limit:
            return
        if i == len(order):
            sol = Assignment((u, world[u]) for u in tord)
            if sol not in seen:
                seen.add(sol)
                found.append(sol)
            return
        u = order[i]
        if model.parents(u):
            candidates = [model.evaluate(u, world)]
        elif u in k:
            candidates = [k[u]]
        else:
            candidates = model.domains[u].values
        for v in candidates:
            if u in k and k[u] != v:
                continue
            steps[0] += 1
            if steps[0] > budget:
                raise BudgetExceededError(f"constraint search exceeded {budget} steps")
            world[u] = v
            search(i + 1)
            del world[u]

    search(0)
    return found


# --- contrasts --------------------------------------------------------------

DEFAULT, TWEAK = "default", "tweak"


@dataclass(frozen=True)
class Contrast:
    model: Sfm
    actual: Assignment
    contrastive: Assignment
    mode: str
    evals: dict = field(default_factory=dict, compare=False)


def contrast_default(model: Sfm, default_world: Mapping, actual_world: Mapping) -> Contrast:
    """Contrast the actual world against a stated default world."""
    model.require_valid()
    wc = _require_satisfying(model, default_world, "default")
    wa = _require_satisfying(model, actual_world, "actual")
    return Contrast(model, wa, wc, DEFAULT)


def contrast_tweak(model: Sfm, actual_world: Mapping, tweak: Mapping) -> Contrast:
    """Contrast the actual world against the world obtained by changing a few
    exogenous values and re-running inference incrementally."""
    model.require_valid()
    wa = _require_satisfying(model, actual_world, "actual")
    t = model.assignment(tweak)
    endo = [u for u in t if model.parents(u)]
    if endo:
        raise AssignmentError(
            f"tweak touches endogenous nodes {endo}; extract a sub-model to treat them as exogenous"
        )
    res = cfi(model, wa, t)
    return Contrast(model, wa, res.world, TWEAK, res.evals)


@dataclass(frozen=True)
class Utterance:
    cause: Assignment
    effect: Assignment
    changed: frozenset

    def render(self) -> str:
        if not self.effect:
            return f"{format_assignment(self.cause)} causes nothing"
        return f"{format_assignment(self.cause)} causes {format_assignment(self.effect)}"

    def __str__(self):
        return self.render()


def utterance_of(contrast: Contrast) -> Utterance:
    """Keep only the nodes whose values differ, split them into exogenous causes
    and endogenous effects, and report the actual values."""
    model, wa, wc = contrast.model, contrast.actual, contrast.contrastive
    changed = [u for u in model.order if wa[u] != wc[u]]
    cause = Assignment((u, wa[u]) for u in changed if not model.parents(u))
    effect = Assignment((u, wa[u]) for u in changed if model.parents(u))
    # between two worlds of one model, an endogenous change needs an exogenous one
    assert cause or not effect, "endogenous change without exogenous change"
    return Utterance(cause, effect, frozenset(changed))
