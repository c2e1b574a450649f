"""Teams, functional dependency, and model intersections built from determinations."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .errors import (
    AssignmentError,
    ConstructionError,
    DomainError,
    UnpermittedFragmentError,
)
from .functions import Table
from .model import DEFAULT_BUDGET, Sfm, as_domain, check_budget
from .values import Assignment, Domain


class Team:
    """A set of complete assignments over a common node set."""

    def __init__(self, members: Iterable[Mapping] = (), nodes: Iterable[str] | None = None):
        ms = [m if isinstance(m, Assignment) else Assignment(m) for m in members]
        keys = {m.nodes for m in ms}
        if len(keys) > 1:
            raise AssignmentError("team members bind different node sets")
        if nodes is not None:
            nodes = tuple(nodes)
            if keys and keys.pop() != frozenset(nodes):
                raise AssignmentError("team members do not match the declared node set")
        elif ms:
            nodes = tuple(ms[0])
        else:
            nodes = ()
        self.nodes = nodes
        self.members = frozenset(ms)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, world):
        return Assignment(world) in self.members

    def __eq__(self, other):
        if not isinstance(other, Team):
            return NotImplemented
        return self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"Team({len(self.members)} worlds over {list(self.nodes)})"

    def extensions(self, fragment: Mapping) -> list[Assignment]:
        return [w for w in self.members if w.extends(fragment)]

    def permits(self, fragment: Mapping) -> bool:
        return any(w.extends(fragment) for w in self.members)

    def project(self, nodes: Iterable[str]) -> set[Assignment]:
        nodes = list(nodes)
        return {w.restrict(nodes) for w in self.members}


def _check_keys(team: Team, nodes, what):
    unknown = set(nodes) - set(team.nodes)
    if unknown and team.members:
        raise AssignmentError(f"{what} not in team: {sorted(unknown)}")


def fd_holds(team: Team, sources: Iterable[str], targets: Iterable[str]) -> bool:
    """Node-level dependency: members agreeing on ``sources`` agree on ``targets``.

    Vacuously true on an empty team.
    """
    sources, targets = sorted(set(sources)), sorted(set(targets))
    _check_keys(team, sources, "sources")
    _check_keys(team, targets, "targets")
    seen = {}
    for w in team.members:
        x = tuple(w[n] for n in sources)
        y = tuple(w[n] for n in targets)
        if seen.setdefault(x, y) != y:
            return False
    return True


def fd_value_holds(team: Team, source_fragment: Mapping, targets: Iterable[str]) -> bool:
    """Value-level dependency: all members extending the fragment agree on ``targets``."""
    frag = Assignment(source_fragment)
    targets = sorted(set(targets))
    _check_keys(team, frag, "fragment nodes")
    _check_keys(team, targets, "targets")
    ext = team.extensions(frag)
    if not ext:
        raise UnpermittedFragmentError(f"{frag} is not permitted by the team")
    return len({w.restrict(targets) for w in ext}) == 1


@dataclass(frozen=True)
class FDet:
    """A named determination ``sources -> targets`` given as a full table.

    ``table`` maps source assignments (over exactly ``sources``) to target
    assignments (over exactly ``targets``).
    """

    sources: tuple[str, ...]
    targets: tuple[str, ...]
    table: Mapping
    domains: Mapping

    def __init__(self, sources, targets, table, domains):
        object.__setattr__(self, "sources", tuple(sources))
        object.__setattr__(self, "targets", tuple(targets))
        object.__setattr__(self, "domains", {n: as_domain(d) for n, d in domains.items()})
        rows = {}
        for x, y in table.items():
            rows[Assignment(x)] = Assignment(y)
        object.__setattr__(self, "table", rows)
        self._check()

    def _check(self):
        for n in self.sources + self.targets:
            if n not in self.domains:
                raise DomainError(f"no domain for {n}")
            if not self.domains[n].is_finite:
                raise DomainError(f"{n}: determinations need finite domains")
        expected = {
            Assignment(zip(self.sources, combo))
            for combo in itertools.product(*[self.domains[n].values for n in self.sources])
        }
        if set(self.table) != expected:
            raise DomainError("determination table is not left-total over the source product")
        for y in self.table.values():
            if y.nodes != frozenset(self.targets):
                raise DomainError(f"determination output {y} does not bind exactly {list(self.targets)}")
            for n, v in y.items():
                if v not in self.domains[n]:
                    raise DomainError(f"output {n}:{v} outside domain {self.domains[n]}")

    @classmethod
    def from_callable(cls, sources, targets, domains, fn) -> FDet:
        """``fn`` takes the source values (as Python scalars, in ``sources``
        order) and returns a tuple of target values (or a scalar for one target)."""
        doms = {n: as_domain(d) for n, d in domains.items()}
        table = {}
        for combo in itertools.product(*[doms[n].values for n in sources]):
            out = fn(*[v.payload for v in combo])
            if len(targets) == 1 and not isinstance(out, tuple):
                out = (out,)
            table[Assignment(zip(sources, combo))] = Assignment(zip(targets, out))
        return cls(sources, targets, table, doms)

    def holds_in(self, world: Mapping) -> bool:
        x = Assignment(world).restrict(self.sources)
        return Assignment(world).extends(self.table[x])


def construct_intersection(fdets: Sequence[FDet]) -> list[Sfm]:
    """One model per determination: edges sources x targets, and each target
    reads its own coordinate of the determination's output."""
    if not fdets:
        raise ConstructionError("need at least one determination")
    parts = []
    for i, fd in enumerate(fdets):
        if not fd.sources:
            raise ConstructionError(
                f"determination #{i} has no sources; its targets would be exogenous yet constrained"
            )
        overlap = set(fd.sources) & set(fd.targets)
        if overlap:
            raise ConstructionError(f"determination #{i} is cyclic on {sorted(overlap)}")
        doms = {n: fd.domains[n] for n in fd.sources + fd.targets}
        funcs = {}
        for y in fd.targets:
            rows = {tuple(x[s] for s in fd.sources): out[y] for x, out in fd.table.items()}
            funcs[y] = Table(fd.sources, rows)
        parts.append(Sfm(doms, funcs))
    return parts


def intersection_team(parts: Sequence[Sfm], universe_domains: Mapping, budget: int = DEFAULT_BUDGET) -> Team:
    """All assignments over the universe whose restriction satisfies every part."""
    from .model import satisfies

    universe = {n: as_domain(d) for n, d in universe_domains.items()}
    for i, p in enumerate(parts):
        p.require_valid()
        for n, d in p.domains.items():
            if n not in universe:
                raise DomainError(f"part #{i} node {n} missing from the universe")
            if universe[n] != d:
                raise DomainError(f"part #{i} disagrees with the universe on the domain of {n}")
    nodes = list(universe)
    check_budget(universe.values(), budget, "intersection universe")
    members = []
    for combo in itertools.product(*[universe[n].values for n in nodes]):
        w = Assignment(zip(nodes, combo))
        if all(satisfies(p, w.restrict(p.nodes)) for p in parts):
            members.append(w)
    return Team(members, nodes=nodes)


def universe_of(parts: Sequence[Sfm]) -> dict[str, Domain]:
    """Union of the parts' domains; shared nodes must agree."""
    out = {}
    for p in parts:
        for n, d in p.domains.items():
            if n in out and out[n] != d:
                raise DomainError(f"parts disagree on the domain of {n}")
            out[n] = d
    return out
