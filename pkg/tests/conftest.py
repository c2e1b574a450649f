import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from sfm import Sfm, expr
from sfm.dsl import parse_model

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def example1(domain="real"):
    """The five-node example: B = A^2, D = B + C, E = 7C."""
    if domain == "int":
        doms = {
            "A": range(-10, 11),
            "B": range(0, 101),
            "C": range(-10, 11),
            "D": range(-10, 111),
            "E": range(-70, 71),
        }
        doms = {k: list(v) for k, v in doms.items()}
    else:
        doms = {n: "real" for n in "ABCDE"}
    return Sfm(
        doms,
        {
            "B": expr(["A"], "A ^ 2"),
            "D": expr(["B", "C"], "B + C"),
            "E": expr(["C"], "C * 7"),
        },
    )


@pytest.fixture
def ex1():
    return example1()


@pytest.fixture
def ex1_int():
    return example1("int")


@pytest.fixture
def or_squad():
    return parse_model(
        """model {
          node Assassin1 exo domain {0, 1}
          node Assassin2 exo domain {0, 1}
          node Death endo parents (Assassin1, Assassin2) domain {0, 1} expr Assassin1 | Assassin2
        }"""
    )


@pytest.fixture
def and_squad():
    return parse_model(
        """model {
          node Assassin1 exo domain {0, 1}
          node Assassin2 exo domain {0, 1}
          node Death endo parents (Assassin1, Assassin2) domain {0, 1} expr Assassin1 & Assassin2
        }"""
    )


@pytest.fixture
def chain():
    return parse_model(
        """model {
          node Assassin exo domain {0, 1}
          node Bullet endo parents (Assassin) domain {0, 1} expr Assassin
          node Death endo parents (Bullet) domain {0, 1} expr Bullet
        }"""
    )


@pytest.fixture
def preemption():
    return parse_model(
        """model {
          node Assassin1 exo domain {0, 1}
          node EarlyDeath endo parents (Assassin1) domain {0, 1} expr Assassin1
          node Assassin2 endo parents (EarlyDeath) domain {0, 1} expr !EarlyDeath
          node LateDeath endo parents (EarlyDeath, Assassin2) domain {0, 1} expr EarlyDeath | Assassin2
        }"""
    )


@pytest.fixture
def boulder():
    return parse_model(
        """model {
          node Boulder exo domain {0, 1}
          node Dodge endo parents (Boulder) domain {0, 1} expr Boulder
          node Survive endo parents (Boulder, Dodge) domain {0, 1} expr !Boulder | Dodge
        }"""
    )


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num][1])
