"""Random values over finite outcome spaces, exact push-forward, seeded
sampling, and Bayesian-network import through inverse-CDF noise parents."""

from __future__ import annotations

import itertools
import math
import zlib
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import AssignmentError, BudgetExceededError, CycleError, DomainError, ProbabilityError
from .functions import Table
from .graph import find_cycle
from .infer import vfi
from .model import DEFAULT_BUDGET, Sfm, as_domain
from .values import Assignment, Domain, Value, rat, value


class Distribution:
    """Finite support with exact rational probabilities.

    Probabilities must be positive and sum to exactly 1; support values must
    be distinct. Order is kept: it fixes outcome indices and PIT intervals.
    """

    def __init__(self, support: Iterable):
        if isinstance(support, Mapping):
            support = support.items()
        vals, probs = [], []
        for v, p in support:
            v = v if isinstance(v, Value) else value(v)
            p = Fraction(p)
            if p <= 0:
                raise ProbabilityError(f"probability of {v} is {p}, not positive")
            if v in vals:
                raise ProbabilityError(f"duplicate support value {v}")
            vals.append(v)
            probs.append(p)
        if not vals:
            raise ProbabilityError("empty support")
        if sum(probs) != 1:
            raise ProbabilityError(f"probabilities sum to {sum(probs)}, not 1")
        self.values = tuple(vals)
        self.probs = tuple(probs)

    def __len__(self):
        return len(self.values)

    def items(self):
        return zip(self.values, self.probs)

    def as_dict(self) -> dict[Value, Fraction]:
        return dict(self.items())

    def within(self, domain: Domain, node: str = "") -> Distribution:
        """The same distribution with values coerced into ``domain``."""
        try:
            vals = [domain.coerce(v) for v in self.values]
        except DomainError as e:
            raise DomainError(f"{node}: support {e}") from None
        return Distribution(zip(vals, self.probs))

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash(frozenset(self.items()))

    def __repr__(self):
        body = ", ".join(f"{v}: {p}" for v, p in self.items())
        return f"Distribution({{{body}}})"


@dataclass(frozen=True)
class RandomValue:
    """A value drawn from ``distribution`` by the noise source ``source``.

    Nodes sharing a source id move together; distinct ids are independent.
    """

    source: str
    distribution: Distribution


def uniform(values) -> Distribution:
    vals = list(values)
    return Distribution((v, Fraction(1, len(vals))) for v in vals)


@dataclass
class ProbSfm:
    base: Sfm
    random_nodes: frozenset
    exo_distributions: dict
    noise: dict = field(default_factory=dict)  # BN node -> its noise parent, after import


def extend(base: Sfm, random_nodes: Iterable[str] = (), exo_distributions: Mapping | None = None) -> ProbSfm:
    """Mark ``random_nodes`` as random; the set must be closed under descendants."""
    base.require_valid()
    s = frozenset(random_nodes)
    unknown = s - set(base.nodes)
    if unknown:
        raise AssignmentError(f"unknown random nodes {sorted(unknown)}")
    for u in sorted(s):
        if not base.domains[u].is_finite:
            raise DomainError(f"random node {u} needs a finite domain")
    for u in [n for n in base.order if n in s]:
        escaping = [d for d in base.order if d in base.descendants([u]) and d not in s]
        if escaping:
            raise ProbabilityError(f"{escaping[0]} is a descendant of random node {u} but not random")
    dists = {}
    for n, rv in (exo_distributions or {}).items():
        if n not in s:
            raise ProbabilityError(f"{n} has a distribution but is not random")
        if base.parents(n):
            raise ProbabilityError(f"{n} is endogenous; only exogenous nodes take supplied randomness")
        if isinstance(rv, Distribution):
            rv = RandomValue(n, rv)
        dists[n] = RandomValue(rv.source, rv.distribution.within(base.domains[n], n))
    return ProbSfm(base, s, dists)


def _resolve(pm: ProbSfm, exo_choice: Mapping | None) -> dict:
    """Exogenous binding per node: a Value or a RandomValue."""
    base = pm.base
    choice = dict(exo_choice or {})
    extra = sorted(set(choice) - set(base.exo))
    if extra:
        raise AssignmentError(f"exogenous choice binds non-exogenous nodes {extra}")
    out = {}
    for n in base.exo:
        if n in choice:
            v = choice[n]
        elif n in pm.exo_distributions:
            v = pm.exo_distributions[n]
        else:
            raise AssignmentError(f"no value or distribution for exogenous node {n}")
        if isinstance(v, Distribution):
            v = RandomValue(n, v)
        if isinstance(v, RandomValue):
            if n not in pm.random_nodes:
                raise ProbabilityError(f"{n} is not random but was given a random value")
            v = RandomValue(v.source, v.distribution.within(base.domains[n], n))
        else:
            v = base.domains[n].coerce(v)
        out[n] = v
    return out


def sources(pm: ProbSfm, exo_choice: Mapping | None = None) -> dict[str, tuple]:
    """Noise sources in play, sorted by id, each with its probability vector."""
    found = {}
    for n, v in _resolve(pm, exo_choice).items():
        if not isinstance(v, RandomValue):
            continue
        probs = v.distribution.probs
        if v.source in found and found[v.source] != probs:
            raise ProbabilityError(f"source {v.source} is shared with different probabilities")
        found[v.source] = probs
    return dict(sorted(found.items()))


def realize(pm: ProbSfm, exo_choice: Mapping | None, outcome: Mapping) -> Assignment:
    """Replace each random exogenous value by its support value at the outcome
    index, then run forward inference."""
    exo = {}
    for n, v in _resolve(pm, exo_choice).items():
        if isinstance(v, RandomValue):
            if v.source not in outcome:
                raise ProbabilityError(f"outcome has no coordinate for source {v.source}")
            i = outcome[v.source]
            if not 0 <= i < len(v.distribution):
                raise ProbabilityError(f"index {i} out of range for source {v.source}")
            v = v.distribution.values[i]
        exo[n] = v
    return vfi(pm.base, exo).world


def push_forward(
    pm: ProbSfm, exo_choice: Mapping | None = None, budget: int = DEFAULT_BUDGET
) -> dict[Assignment, Fraction]:
    """Exact distribution over realized worlds by enumerating every outcome."""
    srcs = sources(pm, exo_choice)
    size = math.prod(len(p) for p in srcs.values())
    if size > budget:
        raise BudgetExceededError(f"{size} outcomes exceed budget {budget}")
    ids = list(srcs)
    out: dict[Assignment, Fraction] = {}
    for idx in itertools.product(*[range(len(p)) for p in srcs.values()]):
        w = realize(pm, exo_choice, dict(zip(ids, idx)))
        p = math.prod((srcs[s][i] for s, i in zip(ids, idx)), start=Fraction(1))
        out[w] = out.get(w, Fraction(0)) + p
    return out


def _generator(seed: int, source: str) -> np.random.Generator:
    # counter-based: the stream for (seed, source) is fixed, draw i is counter i
    return np.random.Generator(np.random.Philox(key=[seed, zlib.crc32(source.encode("utf-8"))]))


def sample(pm: ProbSfm, exo_choice: Mapping | None = None, seed: int = 0, n: int = 1) -> Counter:
    """Monte-Carlo counterpart of :func:`push_forward`; frequencies sum to ``n``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= seed < 2**64:
        raise ValueError("seed must fit in 64 unsigned bits")
    srcs = sources(pm, exo_choice)
    ids = list(srcs)
    cols = []
    for s in ids:
        cdf = np.cumsum([float(p) for p in srcs[s]])
        u = _generator(seed, s).random(n)
        cols.append(np.minimum(np.searchsorted(cdf, u, side="right"), len(cdf) - 1))
    tally: Counter = Counter()
    if not ids:
        tally[realize(pm, exo_choice, {})] = n
        return tally
    rows, counts = np.unique(np.stack(cols, axis=1), axis=0, return_counts=True)
    for row, c in zip(rows, counts):
        tally[realize(pm, exo_choice, dict(zip(ids, map(int, row))))] += int(c)
    return tally


def total_variation(p: Mapping, q: Mapping) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(float(p.get(k, 0)) - float(q.get(k, 0))) for k in keys)


def marginal(dist: Mapping[Assignment, Fraction], nodes: Iterable[str]) -> dict[Assignment, Fraction]:
    nodes = list(nodes)
    out: dict[Assignment, Fraction] = {}
    for w, p in dist.items():
        k = w.restrict(nodes)
        out[k] = out.get(k, 0) + p
    return out


# --- Bayesian networks ------------------------------------------------------


class BayesNet:
    """A DAG with finite domains and one conditional table per node.

    ``cpts[Y]`` maps each tuple of parent values (in ``parents[Y]`` order) to a
    :class:`Distribution` over Y's domain.
    """

    def __init__(self, domains: Mapping, parents: Mapping, cpts: Mapping):
        self.domains = {n: as_domain(d) for n, d in domains.items()}
        self.parents = {n: tuple(parents.get(n, ())) for n in self.domains}
        for n, d in self.domains.items():
            if not d.is_finite:
                raise DomainError(f"{n}: network nodes need finite domains")
        for n, ps in self.parents.items():
            missing = [p for p in ps if p not in self.domains]
            if missing:
                raise DomainError(f"{n}: unknown parents {missing}")
        cycle = find_cycle(self.domains, {(p, n) for n, ps in self.parents.items() for p in ps})
        if cycle:
            raise CycleError(cycle)
        self.cpts = {}
        for n in self.domains:
            if n not in cpts:
                raise ProbabilityError(f"no conditional table for {n}")
            rows = {}
            for key, dist in cpts[n].items():
                key = key if isinstance(key, tuple) else (key,)
                key = tuple(self.domains[p].coerce(v) for p, v in zip(self.parents[n], key))
                if not isinstance(dist, Distribution):
                    dist = Distribution(dist)
                rows[key] = dist.within(self.domains[n], n)
            need = set(itertools.product(*[self.domains[p].values for p in self.parents[n]]))
            if set(rows) != need:
                raise ProbabilityError(f"conditional table of {n} is not left-total over its parents")
            self.cpts[n] = rows

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(self.domains)

    def joint(self) -> dict[Assignment, Fraction]:
        """Exact joint by the chain rule, for use as an independent oracle."""
        nodes = self.nodes
        out = {}
        for combo in itertools.product(*[self.domains[n].values for n in nodes]):
            w = dict(zip(nodes, combo))
            p = Fraction(1)
            for n in nodes:
                row = self.cpts[n][tuple(w[q] for q in self.parents[n])].as_dict()
                p *= row.get(w[n], 0)
                if not p:
                    break
            if p:
                out[Assignment(w)] = p
        return out


def _noise_name(node: str, taken: set) -> str:
    name = f"U_{node}"
    while name in taken:
        name += "_"
    return name


def _breakpoints(dist: Distribution) -> list[Fraction]:
    return list(itertools.accumulate(dist.probs, initial=Fraction(0)))


def bn_import(bn: BayesNet) -> ProbSfm:
    """One uniform noise parent per network node; the node's function is the
    inverse CDF of its conditional table row.

    Each noise parent ranges over the cells of the coarsest partition of
    [0, 1) refining every row's cumulative intervals; a cell is named by its
    left endpoint and weighted by its length. Intervals are left-closed,
    right-open, in table row order.
    """
    taken = set(bn.nodes)
    domains: dict = {}
    functions = {}
    dists = {}
    noise = {}
    for y in bn.nodes:
        u = _noise_name(y, taken)
        taken.add(u)
        noise[y] = u
        rows = bn.cpts[y]
        cuts = sorted({c for d in rows.values() for c in _breakpoints(d)})
        cells = list(zip(cuts, cuts[1:]))
        domains[u] = Domain.finite(rat(a) for a, _ in cells)
        dists[u] = RandomValue(u, Distribution((rat(a), b - a) for a, b in cells))
        table = {}
        for key, d in rows.items():
            bp = _breakpoints(d)
            for a, _ in cells:
                k = next(i for i in range(len(d)) if bp[i] <= a < bp[i + 1])
                table[key + (rat(a),)] = d.values[k]
        functions[y] = Table(bn.parents[y] + (u,), table)
    all_domains = {}
    for y in bn.nodes:
        all_domains[noise[y]] = domains[noise[y]]
    all_domains.update(bn.domains)
    base = Sfm(all_domains, functions)
    pm = extend(base, base.nodes, dists)
    pm.noise = noise
    return pm


def implied_conditional(pm: ProbSfm, node: str, parent_values: Iterable) -> dict[Value, Fraction]:
    """Law of ``node`` given its non-noise parents, from exact cell lengths."""
    u = pm.noise[node]
    base = pm.base
    others = [p for p in base.parents(node) if p != u]
    env = {p: base.domains[p].coerce(v) for p, v in zip(others, parent_values)}
    out: dict[Value, Fraction] = {}
    for cell, p in pm.exo_distributions[u].distribution.items():
        v = base.evaluate(node, {**env, u: cell})
        out[v] = out.get(v, Fraction(0)) + p
    return out


def parse_cpt(text: str) -> BayesNet:
    """Read a network from whitespace-separated columns ``NODE PARENTS VALUE PROB``.

    PARENTS is ``-`` for a root or ``X=0,Z=1``; PROB is ``p/q`` or an integer.
    ``#`` starts a comment. Node and value order follow first appearance.
    """
    from .dsl import ParseError, parse_value

    domains: dict[str, list] = {}
    parents: dict[str, tuple] = {}
    rows: dict[str, dict] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split()
        if len(cols) != 4:
            raise ParseError(lineno, 1, "expected four columns: node parents value probability")
        node, pcol, vcol, pr = cols
        try:
            prob = Fraction(pr)
        except (ValueError, ZeroDivisionError):
            raise ParseError(lineno, raw.find(pr) + 1, f"bad probability {pr!r}") from None
        if pcol == "-":
            names, key = (), ()
        else:
            pairs = [item.split("=", 1) for item in pcol.split(",")]
            if any(len(p) != 2 for p in pairs):
                raise ParseError(lineno, raw.find(pcol) + 1, f"bad parent list {pcol!r}")
            names = tuple(k for k, _ in pairs)
            key = tuple(parse_value(v) for _, v in pairs)
        if parents.setdefault(node, names) != names:
            raise ParseError(lineno, 1, f"{node}: parents differ from an earlier row")
        v = parse_value(vcol)
        dom = domains.setdefault(node, [])
        if v not in dom:
            dom.append(v)
        rows.setdefault(node, {}).setdefault(key, []).append((v, prob))
    for n, ps in parents.items():
        for p in ps:
            if p not in domains:
                raise ProbabilityError(f"{n}: parent {p} has no rows")
    try:
        return BayesNet(
            domains,
            parents,
            {n: {k: Distribution(r) for k, r in rs.items()} for n, rs in rows.items()},
        )
    except DomainError as e:
        raise ProbabilityError(str(e)) from None


__all__ = [
    "Distribution",
    "RandomValue",
    "ProbSfm",
    "BayesNet",
    "uniform",
    "extend",
    "sources",
    "realize",
    "push_forward",
    "sample",
    "total_variation",
    "marginal",
    "bn_import",
    "implied_conditional",
    "parse_cpt",
]
