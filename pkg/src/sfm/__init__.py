"""Structural functional models: deterministic causal models built from
functions on a DAG, with forward, incremental and constraint-based inference,
contrastive cause/effect utterances, and a finite probabilistic extension."""

from .algebra import compose, decompose, extract_sub_sfm, functions_equal, is_sub_sfm
from .errors import *  # noqa: F401,F403
from .functions import Expr, Table, expr
from .graph import Cycle, Root, gmt_witness, verify_witness
from .infer import (
    Contrast,
    InferResult,
    Utterance,
    cfi,
    contrast_default,
    contrast_tweak,
    csp_solve,
    partial_fi,
    utterance_of,
    vfi,
)
from .model import (
    DEFAULT_BUDGET,
    Sfm,
    ValidationReport,
    Violation,
    enumerate_team,
    exo_assignments,
    is_permitted,
    satisfies,
    topological_order,
    unsatisfied_nodes,
    validate,
)
from .team import FDet, Team, construct_intersection, fd_holds, fd_value_holds, intersection_team, universe_of
from .values import Assignment, Domain, Value, format_assignment, rat, value

__version__ = "0.1.0"
