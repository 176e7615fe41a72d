import pytest

import asyncsynth


def test_fig2_synthesis_verifies():
    plant = asyncsynth.gen_fig2()
    assert asyncsynth.validate(plant) == []
    assert asyncsynth.graph_edges(plant) == [("1", "2"), ("2", "3")]
    report, controller = asyncsynth.synthesize(plant)
    assert report["winning"] and report["verified"]
    assert asyncsynth.verify(plant, controller)["verdict"] == "winning"


def test_losing_plant_has_no_controller():
    plant = asyncsynth.parse_plant(
        "plant\n"
        "processes\n"
        "  process p initial s0 states s0 s1 s2 final s1\n"
        "actions\n"
        "  action u uncontrollable p\n"
        "transitions\n"
        "  u : s0 -> s2\n"
    )
    assert not asyncsynth.solve(plant)
    report, controller = asyncsynth.synthesize(plant)
    assert not report["winning"]
    assert controller is None


def test_round_trip_and_errors():
    plant = asyncsynth.gen_l2()
    text = plant.serialize()
    assert asyncsynth.parse_plant(text).serialize() == text
    with pytest.raises(asyncsynth.PlantError, match="line 3"):
        asyncsynth.parse_plant("plant\nprocesses\n  process p initial s0 states s0 final s9\n")


def test_reduce_sidecar():
    reduced, sidecar = asyncsynth.reduce(asyncsynth.gen_l2(), "r", "q")
    assert reduced.processes == ["q"]
    assert sidecar["stats"]["q_states"] == 4


def test_counter_checker():
    assert asyncsynth.is_iterated_counter(["a_1", "#_1"], 1, 2) == (True, [0])
    ok, values = asyncsynth.is_iterated_counter(
        "a_2 a_1 #_1 b_2 b_1 #_1 #_2".split(), 2, 2)
    assert ok and values == [2]


def test_corpus_is_seeded():
    a = [p.serialize() for p in asyncsynth.random_corpus(7, 5)]
    b = [p.serialize() for p in asyncsynth.random_corpus(7, 5)]
    assert a == b


def test_state_ceiling():
    with pytest.raises(asyncsynth.ResourceLimit):
        asyncsynth.synthesize(asyncsynth.gen_fig2(), state_limit=5)
