"""Command-line front end.

Exit status: 0 on success, 1 when a scenario or check fails, 2 on usage or
parse errors, 3 when an enumeration budget is exceeded. Diagnostics go to
stderr; results go to stdout as text or as one JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import bench_eval_counts
from .dsl import ModelValidationError, ParseError, format_model, parse_assignment, parse_document, parse_names
from .errors import (
    AssignmentError,
    BudgetExceededError,
    DomainError,
    ProbabilityError,
    SfmError,
    UnsupportedEnumerationError,
)
from .graph import Cycle, gmt_witness
from .infer import contrast_default, contrast_tweak, csp_solve, partial_fi, utterance_of, vfi
from .model import DEFAULT_BUDGET, enumerate_team
from .prob import bn_import, marginal, parse_cpt, push_forward, sample
from .scenarios import run_corpus
from .team import fd_holds
from .values import Assignment

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _lit(a) -> dict:
    return {k: v.literal() for k, v in a.items()}


def _load(path):
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_document(data, base_dir=str(p.parent), name=p.stem)
    except ParseError as e:
        e.path = path
        raise


def _assign(model, text, what):
    if text is None:
        return None
    try:
        return model.assignment(parse_assignment(text))
    except ParseError as e:
        raise UsageError(f"--{what}: {e}") from None


def _names(text, what):
    try:
        return parse_names(text)
    except ParseError as e:
        raise UsageError(f"--{what}: {e.message}") from None


# --- commands ---------------------------------------------------------------


def cmd_validate(args):
    try:
        doc = _load(args.file)
    except ModelValidationError as e:
        violations = [
            {"kind": v.kind, "subject": v.subject, "message": v.message} for v in e.report.violations
        ]
        text = [f"{args.file}: invalid"] + [f"  {v['kind']}: {v['message']}" for v in violations]
        return EXIT_FAIL, {"ok": False, "violations": violations}, text
    m = doc.model
    out = {"ok": True, "nodes": list(m.nodes), "order": list(m.order), "exo": list(m.exo), "endo": list(m.endo)}
    text = [
        f"{args.file}: ok, {len(m.nodes)} nodes ({len(m.exo)} exogenous)",
        "order: " + " ".join(m.order),
    ]
    return EXIT_OK, out, text


def cmd_infer(args):
    doc = _load(args.file)
    m = doc.model
    exo = _assign(m, args.exo, "exo")
    if exo is None:
        if doc.mode == "vfi":
            exo = doc.query
        elif doc.actual is not None:
            exo = doc.actual.restrict(m.exo)
        else:
            raise UsageError("no exogenous assignment: pass --exo")
    if args.targets:
        res = partial_fi(m, exo, _names(args.targets, "targets"))
    else:
        res = vfi(m, exo)
    evaluated = [u for u in m.order if res.evals.get(u)]
    out = {"world": _lit(res.world), "evaluated": evaluated, "total_evals": res.total_evals}
    text = [str(res.world), f"evaluations: {res.total_evals}"]
    return EXIT_OK, out, text


def cmd_contrast(args):
    doc = _load(args.file)
    m = doc.model
    if args.default and args.tweak:
        raise UsageError("--default and --tweak are mutually exclusive")
    actual = _assign(m, args.actual, "actual") or doc.actual
    if actual is None:
        raise UsageError("no actual world: pass --actual or use a scenario with one")
    default = _assign(m, args.default, "default")
    tweak = _assign(m, args.tweak, "tweak")
    if default is None and tweak is None:
        default, tweak = doc.default, doc.tweak
    if default is not None:
        c = contrast_default(m, default, actual)
    elif tweak is not None:
        c = contrast_tweak(m, actual, tweak)
    else:
        raise UsageError("pass --default or --tweak")
    u = utterance_of(c)
    out = {"mode": c.mode, "cause": _lit(u.cause), "effect": _lit(u.effect), "utterance": u.render()}
    return EXIT_OK, out, [u.render()]


def cmd_csp(args):
    doc = _load(args.file)
    m = doc.model
    known = _assign(m, args.known, "known")
    if known is None:
        known = doc.query if doc.mode == "csp" else Assignment()
    targets = _names(args.targets, "targets") if args.targets is not None else list(doc.targets)
    sols = csp_solve(m, known, targets, limit=args.limit, budget=args.budget)
    out = {"solutions": [_lit(s) for s in sols], "count": len(sols)}
    text = [str(s) for s in sols] or ["no solutions"]
    return EXIT_OK, out, text


def cmd_team(args):
    m = _load(args.file).model
    team = enumerate_team(m, budget=args.budget)
    worlds = sorted((w.ordered(m.order) for w in team), key=lambda w: [v.sort_key() for v in w.values()])
    out = {"nodes": list(m.order), "size": len(worlds), "worlds": [_lit(w) for w in worlds]}
    return EXIT_OK, out, [str(w) for w in worlds] + [f"{len(worlds)} worlds"]


def cmd_fd(args):
    m = _load(args.file).model
    xs, ys = _names(args.x, "x"), _names(args.y, "y")
    for n in xs + ys:
        if n not in m.domains:
            raise AssignmentError(f"unknown node {n}")
    holds = fd_holds(enumerate_team(m, budget=args.budget), xs, ys)
    out = {"x": xs, "y": ys, "holds": holds}
    return EXIT_OK, out, [f"({', '.join(xs)}) -> ({', '.join(ys)}): {'holds' if holds else 'does not hold'}"]


def read_edge_list(text: str):
    """One ``SRC DST`` pair per line, or a lone node name; ``#`` comments."""
    nodes, edges = [], []
    for i, raw in enumerate(text.splitlines(), 1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        if len(parts) > 2:
            raise ParseError(i, 1, "expected 'SRC DST' or a single node")
        nodes.extend(parts)
        if len(parts) == 2:
            edges.append((parts[0], parts[1]))
    return list(dict.fromkeys(nodes)), edges


def cmd_gmt(args):
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise UsageError(f"cannot read {args.file}: {e}") from None
    nodes, edges = read_edge_list(text)
    if not nodes:
        raise UsageError("graph has no nodes")
    w = gmt_witness(nodes, edges)
    if isinstance(w, Cycle):
        out = {"witness": "cycle", "path": list(w.path)}
    else:
        out = {"witness": "root", "node": w.node}
    return EXIT_OK, out, [str(w)]


def _bn(args):
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise UsageError(f"cannot read {args.file}: {e}") from None
    bn = parse_cpt(text)
    return bn, bn_import(bn)


def _dist_rows(dist, nodes):
    rows = [(w.ordered(nodes), p) for w, p in dist.items()]
    return sorted(rows, key=lambda kv: [v.sort_key() for v in kv[0].values()])


def cmd_prob(args):
    bn, pm = _bn(args)
    nodes = [n for n in pm.base.order if n in bn.domains]
    if args.prob_command == "import-bn":
        noise = {
            u: [[v.literal(force_ratio=True), str(p)] for v, p in pm.exo_distributions[u].distribution.items()]
            for u in pm.noise.values()
        }
        text = format_model(pm.base).rstrip("\n").splitlines()
        for u, cells in noise.items():
            text.append(f"# {u} ~ " + ", ".join(f"{v}:{p}" for v, p in cells))
        return EXIT_OK, {"model": format_model(pm.base), "noise": noise}, text
    if args.prob_command == "push":
        dist = marginal(push_forward(pm, budget=args.budget), nodes)
        rows = _dist_rows(dist, nodes)
        out = {"nodes": nodes, "distribution": [{"world": _lit(w), "p": str(p)} for w, p in rows]}
        return EXIT_OK, out, [f"{w} {p}" for w, p in rows]
    tally = sample(pm, seed=args.seed, n=args.n)
    freq = {}
    for w, c in tally.items():
        k = w.restrict(nodes)
        freq[k] = freq.get(k, 0) + c
    rows = _dist_rows(freq, nodes)
    out = {"nodes": nodes, "seed": args.seed, "n": args.n, "counts": [{"world": _lit(w), "count": c} for w, c in rows]}
    return EXIT_OK, out, [f"{w} {c}" for w, c in rows]


def cmd_scenario(args):
    run = run_corpus(args.directory)
    cases = []
    text = []
    for r in run.results:
        status = "PASS" if r.passed else "FAIL"
        cases.append({"name": r.name, "mode": r.mode, "result": r.summary, "passed": bool(r.passed)})
        line = f"{status} {r.name}: {r.summary}"
        if not r.passed and r.message:
            line += f" ({r.message})"
        text.append(line)
    for name, msg in run.errors.items():
        cases.append({"name": name, "mode": None, "result": None, "passed": False, "error": msg})
        text.append(f"ERROR {name}: {msg}")
    text.append(f"{run.passed} passed, {run.failed} failed")
    out = {"cases": cases, "passed": run.passed, "failed": run.failed}
    return (EXIT_OK if run.failed == 0 else EXIT_FAIL), out, text


def cmd_bench(args):
    doc = _load(args.file)
    m = doc.model
    ref = _assign(m, args.actual, "actual") or doc.actual
    if ref is None:
        raise UsageError("no reference world: pass --actual or use a scenario with one")
    tweaks = [_assign(m, t, "tweak") for t in (args.tweak or [])]
    if not tweaks and doc.tweak is not None:
        tweaks = [doc.tweak]
    table = bench_eval_counts(m, ref, tweaks)
    text = [f"{'tweak':<30} {'vfi':>5} {'cfi':>5} {'saved':>5}"]
    for r in table.rows:
        text.append(f"{str(r.tweak):<30} {r.vfi_evals:>5} {r.cfi_evals:>5} {r.saved:>5}")
    t = table.totals
    text.append(f"{'total':<30} {t['vfi']:>5} {t['cfi']:>5} {t['saved']:>5}")
    return EXIT_OK, table.as_dict(), text


# --- parser -----------------------------------------------------------------


def _positive(s):
    try:
        n = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _seed(s):
    try:
        n = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2**64)")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="enumeration budget")

    ap = argparse.ArgumentParser(prog="sfm", description="Structural functional models: inference and contrasts.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="parse and validate a model or scenario file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("infer", parents=[common], help="forward inference (partial with --targets)")
    p.add_argument("file")
    p.add_argument("--exo", help="exogenous assignment, e.g. 'A:1, B:0'")
    p.add_argument("--targets", help="comma-separated target nodes")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("contrast", parents=[common], help="print the cause/effect utterance of a contrast")
    p.add_argument("file")
    p.add_argument("--actual")
    p.add_argument("--default")
    p.add_argument("--tweak")
    p.set_defaults(func=cmd_contrast)

    p = sub.add_parser("csp", parents=[common], help="solve an indicative query by constraint search")
    p.add_argument("file")
    p.add_argument("--known")
    p.add_argument("--targets")
    p.add_argument("--limit", type=_positive)
    p.set_defaults(func=cmd_csp)

    p = sub.add_parser("scenario", help="scenario corpus commands")
    ssub = p.add_subparsers(dest="scenario_command", required=True)
    q = ssub.add_parser("run", parents=[common], help="run every .sfm file in a directory")
    q.add_argument("directory", nargs="?", default=None)
    q.set_defaults(func=cmd_scenario)

    p = sub.add_parser("team", parents=[common], help="enumerate every world of a model")
    p.add_argument("file")
    p.set_defaults(func=cmd_team)

    p = sub.add_parser("fd", parents=[common], help="check a functional dependency over the team")
    p.add_argument("file")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_fd)

    p = sub.add_parser("gmt", parents=[common], help="root or cycle witness for an edge-list graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_gmt)

    p = sub.add_parser("prob", help="probabilistic models from conditional tables")
    psub = p.add_subparsers(dest="prob_command", required=True)
    for name, hint in (("import-bn", "print the imported model"), ("push", "exact joint distribution"),
                       ("sample", "seeded Monte-Carlo tally")):
        q = psub.add_parser(name, parents=[common], help=hint)
        q.add_argument("file")
        if name == "sample":
            q.add_argument("--seed", type=_seed, default=0)
            q.add_argument("--n", type=_positive, default=10000)
        q.set_defaults(func=cmd_prob)

    p = sub.add_parser("bench", parents=[common], help="count evaluations of cfi versus vfi")
    p.add_argument("file")
    p.add_argument("--actual")
    p.add_argument("--tweak", action="append")
    p.set_defaults(func=cmd_bench)
    return ap


def _command_name(args) -> str:
    for sub in ("scenario_command", "prob_command"):
        if getattr(args, sub, None):
            return f"{args.command} {getattr(args, sub)}"
    return args.command


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    err = sys.stderr
    try:
        code, out, text = args.func(args)
    except UsageError as e:
        print(f"sfm: {e}", file=err)
        return EXIT_USAGE
    except ParseError as e:
        print(f"{getattr(e, 'path', None) or getattr(args, 'file', 'input')}:{e}", file=err)
        return EXIT_USAGE
    except (AssignmentError, DomainError, ProbabilityError) as e:
        print(f"sfm: {e}", file=err)
        return EXIT_USAGE
    except (BudgetExceededError, UnsupportedEnumerationError) as e:
        print(f"sfm: {e}", file=err)
        return EXIT_BUDGET
    except SfmError as e:
        print(f"sfm: {e}", file=err)
        return EXIT_FAIL
    if args.format == "json":
        doc = {"command": _command_name(args), "exit": code, **out}
        print(json.dumps(doc, indent=2, sort_keys=False))
    else:
        print("\n".join(text))
    return code


if __name__ == "__main__":
    sys.exit(main())
