import pytest

from conftest import example1
from sfm import Sfm, Table, compose, decompose, enumerate_team, expr, extract_sub_sfm, is_sub_sfm, satisfies
from sfm.errors import CompositionError, CycleError, SubModelError


def test_chain_sub_model(chain):
    sub = extract_sub_sfm(chain, {"Bullet", "Death"}, {"Death"})
    assert sub.exo == ("Bullet",) and sub.endo == ("Death",)
    assert sub.functions["Death"] == chain.functions["Death"]
    assert is_sub_sfm(sub, chain)


def test_boulder_sub_model(boulder):
    sub = extract_sub_sfm(boulder, {"Boulder", "Dodge", "Survive"}, {"Survive"})
    assert set(sub.exo) == {"Boulder", "Dodge"}
    assert sub.functions["Survive"] == boulder.functions["Survive"]
    assert is_sub_sfm(sub, boulder)


def test_trivial_sub_model(preemption):
    sub = extract_sub_sfm(preemption, set(preemption.nodes), set(preemption.endo))
    assert sub == preemption


def test_sub_model_missing_parent(chain):
    with pytest.raises(SubModelError, match="Death"):
        extract_sub_sfm(chain, {"Death", "Assassin"}, {"Death"})


def test_sub_model_mechanisms_preserved(preemption):
    sub = extract_sub_sfm(preemption, {"EarlyDeath", "Assassin2", "LateDeath"}, {"Assassin2", "LateDeath"})
    for w in enumerate_team(preemption):
        assert satisfies(sub, w.restrict(sub.nodes))


def test_is_sub_sfm_detects_changed_function(chain):
    other = Sfm({"Bullet": [0, 1], "Death": [0, 1]}, {"Death": expr(["Bullet"], "!Bullet")})
    assert not is_sub_sfm(other, chain)


def test_compose_chain_halves(chain):
    a = Sfm({"Assassin": [0, 1], "Bullet": [0, 1]}, {"Bullet": expr(["Assassin"], "Assassin")})
    b = Sfm({"Bullet": [0, 1], "Death": [0, 1]}, {"Death": expr(["Bullet"], "Bullet")})
    assert compose([a, b]) == chain


def test_compose_light_tv():
    a = Sfm({"LightSwitch": [0, 1], "Light": [0, 1]}, {"Light": expr(["LightSwitch"], "LightSwitch")})
    b = Sfm({"TVSwitch": [0, 1], "TV": [0, 1]}, {"TV": expr(["TVSwitch"], "TVSwitch")})
    m = compose([a, b])
    assert len(m.nodes) == 4 and m.report.ok


def test_compose_cyclic_orientations():
    d = [0, 1]
    a = Sfm({"Object": d, "Light": d, "Shadow": d},
            {"Shadow": Table(["Object", "Light"], {(o, l): o & l for o in d for l in d})})
    b = Sfm({"Object": d, "Shadow": d, "Light": d},
            {"Light": Table(["Object", "Shadow"], {(o, s): o & s for o in d for s in d})})
    with pytest.raises(CycleError):
        compose([a, b])


def test_compose_prerequisites():
    a = Sfm({"A": [0, 1], "B": [0, 1]}, {"B": expr(["A"], "A")})
    with pytest.raises(CompositionError, match="domain"):
        compose([a, Sfm({"A": [0, 1, 2]})])
    with pytest.raises(CompositionError, match="function"):
        compose([a, Sfm({"A": [0, 1], "B": [0, 1]}, {"B": expr(["A"], "!A")})])
    with pytest.raises(CompositionError, match="parents"):
        compose([a, Sfm({"C": [0, 1], "B": [0, 1]}, {"B": expr(["C"], "C")})])


def test_compose_accepts_extensionally_equal_functions():
    a = Sfm({"A": [0, 1], "B": [0, 1]}, {"B": expr(["A"], "A")})
    b = Sfm({"A": [0, 1], "B": [0, 1]}, {"B": Table(["A"], {(0,): 0, (1,): 1})})
    assert compose([a, b]).report.ok


def test_decompose_preemption(preemption):
    parts = decompose(preemption)
    assert len(parts) == 3
    assert all(len(p.endo) == 1 for p in parts)


def test_decompose_no_endo():
    m = Sfm({"X": [0, 1], "Y": [0, 1]})
    assert decompose(m) == [m]


def test_decompose_round_trip():
    m = example1()
    assert compose(decompose(m)) == m
    iso = Sfm({"A": [0, 1], "B": [0, 1], "Lonely": [0, 1]}, {"B": expr(["A"], "A")})
    parts = decompose(iso)
    assert len(parts) == 2
    assert compose(parts) == iso
