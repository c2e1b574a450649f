"""Scenario documents, the runner, and the bundled golden corpus."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .dsl import FdCheck, parse_scenario
from .errors import SfmError
from .infer import (
    contrast_default,
    contrast_tweak,
    csp_solve,
    utterance_of,
    vfi,
)
from .model import Sfm, enumerate_team
from .team import fd_holds
from .values import Assignment


@dataclass(frozen=True)
class ExpectedUtterance:
    cause: Assignment
    effect: Assignment


@dataclass(eq=True)
class ScenarioDoc:
    model: Sfm
    mode: str | None = None  # default | tweak | vfi | csp | fd
    actual: Assignment | None = None
    default: Assignment | None = None
    tweak: Assignment | None = None
    query: Assignment | None = None
    targets: tuple[str, ...] = ()
    fd_checks: tuple[FdCheck, ...] = ()
    expected: object = None
    name: str | None = field(default=None, compare=False)


@dataclass
class ScenarioResult:
    name: str | None
    mode: str
    utterance: object = None
    answer: object = None
    passed: bool | None = None
    evals: dict = field(default_factory=dict)
    message: str = ""

    @property
    def summary(self) -> str:
        if self.utterance is not None:
            return self.utterance.render()
        if self.mode == "fd":
            return " ".join("true" if f else "false" for f in self.answer)
        return " ".join(str(a) for a in self.answer)


def run_scenario(doc: ScenarioDoc, budget: int | None = None) -> ScenarioResult:
    """Run the contrast or query a document describes and compare with its expectation."""
    model = doc.model.require_valid()
    res = ScenarioResult(doc.name, doc.mode)
    if doc.mode in ("default", "tweak"):
        if doc.mode == "default":
            c = contrast_default(model, doc.default, doc.actual)
        else:
            c = contrast_tweak(model, doc.actual, doc.tweak)
        res.utterance = utterance_of(c)
        res.evals = dict(c.evals)
        if doc.expected is not None:
            res.passed = (
                res.utterance.cause == doc.expected.cause
                and res.utterance.effect == doc.expected.effect
            )
    elif doc.mode == "vfi":
        r = vfi(model, doc.query)
        res.answer = [r.world]
        res.evals = dict(r.evals)
    elif doc.mode == "csp":
        kw = {} if budget is None else {"budget": budget}
        res.answer = csp_solve(model, doc.query, doc.targets, **kw)
    elif doc.mode == "fd":
        kw = {} if budget is None else {"budget": budget}
        team = enumerate_team(model, **kw)
        res.answer = [fd_holds(team, c.sources, c.targets) for c in doc.fd_checks]
    else:
        raise SfmError("document has no contrast or query section")
    if doc.mode in ("vfi", "csp", "fd") and doc.expected is not None:
        res.passed = list(res.answer) == list(doc.expected)
    if res.passed is False:
        res.message = f"expected {_show_expected(doc)}"
    return res


def _show_expected(doc) -> str:
    e = doc.expected
    if isinstance(e, ExpectedUtterance):
        from .infer import Utterance

        return Utterance(e.cause, e.effect, frozenset()).render()
    if doc.mode == "fd":
        return " ".join("true" if f else "false" for f in e)
    return " ".join(str(a) for a in e)


def load_scenario(path) -> ScenarioDoc:
    path = Path(path)
    data = path.read_bytes()
    return parse_scenario(data, base_dir=str(path.parent), name=path.stem)


SCENARIO_SUFFIX = ".sfm"


def scenario_files(directory) -> list[Path]:
    """Scenario files directly inside ``directory``, sorted by name."""
    return sorted(p for p in Path(directory).iterdir() if p.suffix == SCENARIO_SUFFIX and p.is_file())


def corpus_dir() -> Path:
    """Directory of the bundled golden scenarios."""
    return Path(str(resources.files("sfm") / "corpus"))


@dataclass
class CorpusRun:
    results: list[ScenarioResult]
    errors: dict[str, str]
    seconds: float

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.passed)

    @property
    def failed(self) -> int:
        return len(self.results) - self.passed + len(self.errors)


def run_corpus(directory=None) -> CorpusRun:
    """Parse and run every scenario in ``directory`` (default: the bundled corpus).

    Scenarios without an expectation count as failures: a golden must pin its answer.
    """
    directory = corpus_dir() if directory is None else directory
    t0 = time.perf_counter()
    results, errors = [], {}
    for p in scenario_files(directory):
        try:
            r = run_scenario(load_scenario(p))
        except (SfmError, OSError) as e:
            errors[p.stem] = str(e)
            continue
        if r.passed is None:
            r.passed = False
            r.message = "no expectation"
        results.append(r)
    return CorpusRun(results, errors, time.perf_counter() - t0)


__all__ = [
    "ExpectedUtterance",
    "ScenarioDoc",
    "ScenarioResult",
    "run_scenario",
    "load_scenario",
    "scenario_files",
    "corpus_dir",
    "run_corpus",
    "CorpusRun",
]
