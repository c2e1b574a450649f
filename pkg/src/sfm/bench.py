"""Evaluation counts of incremental versus full forward inference."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .infer import cfi, vfi
from .model import Sfm
from .values import Assignment, format_assignment


@dataclass(frozen=True)
class BenchRow:
    tweak: Assignment
    vfi_evals: int
    cfi_evals: int

    @property
    def saved(self) -> int:
        return self.vfi_evals - self.cfi_evals


@dataclass(frozen=True)
class BenchTable:
    rows: tuple[BenchRow, ...]

    @property
    def totals(self) -> dict:
        v = sum(r.vfi_evals for r in self.rows)
        c = sum(r.cfi_evals for r in self.rows)
        return {"vfi": v, "cfi": c, "saved": v - c}

    def as_dict(self) -> dict:
        return {
            "rows": [
                {"tweak": format_assignment(r.tweak), "vfi": r.vfi_evals, "cfi": r.cfi_evals, "saved": r.saved}
                for r in self.rows
            ],
            "totals": self.totals,
        }


def bench_eval_counts(model: Sfm, reference: Mapping, tweaks: Iterable[Mapping]) -> BenchTable:
    """For each tweak, count function evaluations of vfi on the tweaked
    exogenous assignment and of cfi from ``reference``."""
    ref = model.world(reference)
    rows = []
    for t in tweaks:
        t = model.assignment(t)
        exo = ref.restrict(model.exo).merge(t)
        full = vfi(model, exo)
        inc = cfi(model, ref, t)
        if inc.world != full.world:
            raise AssertionError(f"incremental and full inference disagree on tweak {t}")
        row = BenchRow(t, full.total_evals, inc.total_evals)
        if row.cfi_evals > row.vfi_evals:
            raise AssertionError(f"cfi evaluated more than vfi on tweak {t}")
        rows.append(row)
    return BenchTable(tuple(rows))
