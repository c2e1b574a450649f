import pytest

from oracles import brute_fd, fdet_filter
from sfm import FDet, Sfm, Team, construct_intersection, enumerate_team, expr, fd_holds, fd_value_holds
from sfm import intersection_team, universe_of
from sfm.errors import ConstructionError, DomainError, UnpermittedFragmentError, UnsupportedEnumerationError
from sfm.values import Assignment, Domain

THERMO = Team(
    Assignment(zip(["HighReading", "HighTemperature", "ColdWater"], row))
    for row in [(0, 0, 0), (1, 1, 0), (0, 0, 1), (0, 1, 1)]
)


def test_thermometer_dependencies():
    assert not fd_holds(THERMO, ["HighReading"], ["HighTemperature"])
    assert not fd_holds(THERMO, ["HighReading", "ColdWater"], ["HighTemperature"])
    assert fd_holds(THERMO, ["HighTemperature", "ColdWater"], ["HighReading"])
    assert fd_holds(THERMO, ["ColdWater"], ["ColdWater"])


def test_fd_matches_pairwise_oracle():
    for xs in (["HighReading"], ["ColdWater"], ["HighTemperature", "ColdWater"], []):
        for ys in (["HighReading"], ["HighTemperature"]):
            assert fd_holds(THERMO, xs, ys) == brute_fd(THERMO, xs, ys)


def test_fd_empty_team_vacuous():
    assert fd_holds(Team([], nodes=["X", "Y"]), ["X"], ["Y"])


def test_team_rejects_mixed_key_sets():
    with pytest.raises(Exception):
        Team([{"A": 1}, {"B": 1}])


def or3_team():
    m = Sfm(
        {"X1": [0, 1], "X2": [0, 1], "X3": [0, 1], "Y": [0, 1]},
        {"Y": expr(["X1", "X2", "X3"], "X1 | X2 | X3")},
    )
    return enumerate_team(m)


def test_value_level_dependency():
    t = or3_team()
    assert fd_value_holds(t, {"X1": 1}, ["Y"])
    assert not fd_value_holds(t, {"X1": 0}, ["Y"])
    assert fd_value_holds(t, {"X1": 0, "X2": 0, "X3": 0, "Y": 0}, ["Y"])
    # node-level fails even though one value-level instance holds
    assert not fd_holds(t, ["X1"], ["Y"])


def test_value_level_unpermitted():
    with pytest.raises(UnpermittedFragmentError):
        fd_value_holds(or3_team(), {"X1": 1, "Y": 0}, ["Y"])


def square_fdets():
    d = Domain.range(-2, 2)
    y = Domain.range(0, 4)
    fx = FDet.from_callable(["X"], ["Y"], {"X": d, "Y": y}, lambda x: x * x)
    fz = FDet.from_callable(["Z"], ["Y"], {"Z": d, "Y": y}, lambda z: z * z)
    return fx, fz, {"X": d, "Y": y, "Z": d}


def test_intersection_single_fdet():
    fx, _, _ = square_fdets()
    (part,) = construct_intersection([fx])
    assert set(part.nodes) == {"X", "Y"} and part.edges == {("X", "Y")}


def test_intersection_squares():
    fx, fz, universe = square_fdets()
    parts = construct_intersection([fx, fz])
    assert len(parts) == 2
    assert all(p.parents("Y") for p in parts)  # Y endogenous in both, via different functions
    team = intersection_team(parts, universe)
    expect = {
        Assignment(X=x, Y=y, Z=z)
        for x in range(-2, 3)
        for y in range(0, 5)
        for z in range(-2, 3)
        if x * x == y == z * z
    }
    assert set(team) == expect
    assert set(team) == fdet_filter([fx, fz], universe)
    assert len(team) == 9  # y=0: 1, y=1: 4, y=4: 4


def test_intersection_contradictory_laws_empty():
    d = Domain.range(0, 3)
    up = FDet.from_callable(["X"], ["Y"], {"X": d, "Y": Domain.range(0, 4)}, lambda x: x + 1)
    down = FDet.from_callable(["X"], ["Y"], {"X": d, "Y": Domain.range(0, 4)}, lambda x: max(x - 1, 0))
    team = intersection_team(construct_intersection([up, down]), {"X": d, "Y": Domain.range(0, 4)})
    # only agreement would be x+1 == max(x-1,0), which never happens
    assert len(team) == 0


def test_intersection_single_part_is_its_team():
    m = Sfm({"A": [0, 1], "B": [0, 1]}, {"B": expr(["A"], "!A")})
    team = intersection_team([m], {"A": [0, 1], "B": [0, 1], "C": [0, 1]})
    assert len(team) == 4
    assert {w.restrict(["A", "B"]) for w in team} == set(enumerate_team(m))


def test_construct_rejects_degenerate():
    d = Domain.range(0, 1)
    with pytest.raises(ConstructionError):
        construct_intersection([])
    const = FDet([], ["Y"], {Assignment(): Assignment(Y=0)}, {"Y": d})
    with pytest.raises(ConstructionError):
        construct_intersection([const])
    loop = FDet.from_callable(["X"], ["X"], {"X": d}, lambda x: x)
    with pytest.raises(ConstructionError):
        construct_intersection([loop])


def test_fdet_checks():
    d = Domain.range(0, 1)
    with pytest.raises(DomainError):
        FDet(["X"], ["Y"], {Assignment(X=0): Assignment(Y=0)}, {"X": d, "Y": d})
    with pytest.raises(DomainError):
        FDet.from_callable(["X"], ["Y"], {"X": d, "Y": d}, lambda x: 5)
    with pytest.raises(DomainError):
        FDet(["X"], ["Y"], {}, {"X": Domain.real(), "Y": d})


def test_universe_checks():
    fx, fz, universe = square_fdets()
    parts = construct_intersection([fx, fz])
    assert universe_of(parts) == universe
    with pytest.raises(DomainError):
        intersection_team(parts, {**universe, "Y": Domain.range(0, 5)})
    with pytest.raises(UnsupportedEnumerationError):
        intersection_team([Sfm({"R": "real"})], {"R": "real"})
