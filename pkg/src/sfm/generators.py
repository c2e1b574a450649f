"""Random and parametric model families for property tests, demos and benchmarks."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .functions import Table, expr
from .model import Sfm
from .team import FDet
from .values import Domain, value


def random_sfm(rng: random.Random, max_nodes: int = 6, max_values: int = 3, edge_p: float = 0.4) -> Sfm:
    """A valid model with small integer domains and random table functions.

    Node ``N{i}`` may only read nodes with a smaller index, so the graph is
    acyclic; names are shuffled into the declaration order to avoid a bias
    toward sorted topological orders.
    """
    n = rng.randint(1, max_nodes)
    names = [f"N{i}" for i in range(n)]
    doms = {u: Domain.range(0, rng.randint(1, max_values) - 1) for u in names}
    funcs = {}
    for i, u in enumerate(names):
        parents = [p for p in names[:i] if rng.random() < edge_p]
        if not parents:
            continue
        outs = list(doms[u])
        rows = {
            combo: rng.choice(outs)
            for combo in itertools.product(*[list(doms[p]) for p in parents])
        }
        funcs[u] = Table(parents, rows)
    order = names[:]
    rng.shuffle(order)
    return Sfm({u: doms[u] for u in order}, funcs)


def random_digraph(rng: random.Random, max_nodes: int = 8, edge_p: float | None = None):
    """Nodes and edges of an arbitrary digraph; self-loops allowed."""
    n = rng.randint(1, max_nodes)
    nodes = [f"V{i}" for i in range(n)]
    p = rng.choice([0.1, 0.25, 0.5, 0.8]) if edge_p is None else edge_p
    edges = [(u, v) for u in nodes for v in nodes if rng.random() < p * (0.3 if u == v else 1)]
    return nodes, edges


def switch_circuits(n: int):
    """Every Boolean function of ``n`` switches as a one-output model.

    Yields 2**(2**n) models over switches ``S0..S{n-1}`` and output ``Out``.
    """
    if not 1 <= n <= 3:
        raise ValueError("switch circuits are enumerated for 1 <= n <= 3 only")
    switches = [f"S{i}" for i in range(n)]
    inputs = list(itertools.product([0, 1], repeat=n))
    for outs in itertools.product([0, 1], repeat=len(inputs)):
        doms = {s: [0, 1] for s in switches}
        doms["Out"] = [0, 1]
        yield Sfm(doms, {"Out": Table(switches, dict(zip(inputs, outs)))})


def light_tv() -> Sfm:
    """Two independent circuits: the light follows its switch, the TV its own."""
    return Sfm(
        {"LightSwitch": [0, 1], "TVSwitch": [0, 1], "Light": [0, 1], "TV": [0, 1]},
        {"Light": expr(["LightSwitch"], "LightSwitch"), "TV": expr(["TVSwitch"], "TVSwitch")},
    )


def make_chain(n: int = 10) -> Sfm:
    """A build chain: file ``F{i}`` depends on its own source ``S{i}`` and on
    the previous file, so editing ``S{k}`` dirties exactly ``F{k}..F{n-1}``."""
    doms, funcs = {}, {}
    for i in range(n):
        doms[f"S{i}"] = [0, 1]
    for i in range(n):
        doms[f"F{i}"] = [0, 1]
        if i == 0:
            funcs["F0"] = expr(["S0"], "S0")
        else:
            funcs[f"F{i}"] = expr([f"S{i}", f"F{i-1}"], f"if S{i} == F{i-1} then 0 else 1")
    return Sfm(doms, funcs)


def random_fdets(rng: random.Random, max_nodes: int = 4, max_fdets: int = 3, max_values: int = 2):
    """A list of determinations over at most ``max_nodes`` shared nodes.

    Shared nodes keep one domain across all determinations; sources and
    targets are disjoint and nonempty.
    """
    k = rng.randint(2, max_nodes)
    names = [f"X{i}" for i in range(k)]
    doms = {u: Domain.range(0, rng.randint(1, max_values) - 1) for u in names}
    out = []
    for _ in range(rng.randint(1, max_fdets)):
        pick = rng.sample(names, rng.randint(2, k))
        cut = rng.randint(1, len(pick) - 1)
        src, tgt = pick[:cut], pick[cut:]
        table = {}
        for combo in itertools.product(*[list(doms[s]) for s in src]):
            table[tuple(zip(src, combo))] = tuple((t, rng.choice(list(doms[t]))) for t in tgt)
        out.append(FDet(src, tgt, table, {u: doms[u] for u in pick}))
    return out


def _random_dist(rng, vals):
    # positive weights with small denominators, summing to 1 exactly
    weights = [rng.randint(1, 6) for _ in vals]
    total = sum(weights)
    return [(v, Fraction(w, total)) for v, w in zip(vals, weights)]


def random_bn(rng: random.Random, max_nodes: int = 4, max_values: int = 3):
    """A random network with parents drawn from earlier nodes. Some rows are
    made deterministic so degenerate distributions are exercised too."""
    from .prob import BayesNet, Distribution

    n = rng.randint(1, max_nodes)
    names = [f"Y{i}" for i in range(n)]
    doms = {u: [value(j) for j in range(rng.randint(1, max_values))] for u in names}
    parents, cpts = {}, {}
    for i, u in enumerate(names):
        ps = tuple(p for p in names[:i] if rng.random() < 0.5)
        parents[u] = ps
        rows = {}
        for key in itertools.product(*[doms[p] for p in ps]):
            if rng.random() < 0.15:
                rows[key] = Distribution([(rng.choice(doms[u]), 1)])
            else:
                vals = doms[u][:]
                rng.shuffle(vals)
                rows[key] = Distribution(_random_dist(rng, vals))
        cpts[u] = rows
    return BayesNet(doms, parents, cpts)
