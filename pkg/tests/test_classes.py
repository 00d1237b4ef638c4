import random
from fractions import Fraction

import pytest
from conftest import random_case
from oracles import classes_bruteforce

from atomicflg.classes import class_set, coverage_ratio, mns, mns_bruteforce
from atomicflg.errors import GuardExceeded, InputError
from atomicflg.game import HostGraph, Instance, shopping_range
from atomicflg.instances import fig3, random_instance

ALL9 = set(range(9))


def test_fig3_mns():
    inst = fig3()
    assert mns(inst, (0, 1, 2), {0, 1, 2}, ALL9) == {0, 1}
    assert mns_bruteforce(inst, (0, 1, 2), {0, 1, 2}, ALL9) == {0, 1}
    assert coverage_ratio(inst, (0, 1, 2), {0, 1}, ALL9) == Fraction(5, 2)


def test_fig3_class_set():
    inst = fig3()
    cs = class_set(inst, (0, 1, 2))
    assert cs.loads() == (Fraction(5, 2), 4)
    assert [c.facilities for c in cs.classes] == [{0, 1}, {2}]
    assert len(cs.classes[1].clients) == 4
    assert cs.of_facility(2) is cs.classes[1]


def test_single_facility_and_empty_input():
    inst = fig3()
    assert mns(inst, (0, 1, 2), {2}, ALL9) == {2}
    with pytest.raises(InputError):
        mns(inst, (0, 1, 2), set(), ALL9)


def test_colocated_pair_beats_singletons():
    inst = Instance(HostGraph.build({"a": 1, "b": 1}, [("b", "a")]), 2)
    assert mns_bruteforce(inst, (0, 0), {0, 1}, {0, 1}) == {0, 1}
    cs = class_set(inst, (0, 0))
    assert len(cs.classes) == 1 and cs.loads() == (1,)


def test_empty_coverage_has_ratio_zero():
    inst = Instance(HostGraph.build({"a": 1, "b": 1}, [("a", "b")]), 2)
    # facility 1 sits on a, which is already exhausted once V* excludes a
    assert mns(inst, (1, 0), {0, 1}, {1}) == {1}
    assert mns_bruteforce(inst, (1, 0), {0, 1}, {1}) == {1}


def test_star_single_class():
    inst = Instance(HostGraph.build({c: 1 for c in "hxyz"}, [("x", "h"), ("y", "h"), ("z", "h")]), 1)
    cs = class_set(inst, (0,))
    assert cs.loads() == (4,)


def test_guard():
    inst = random_instance(random.Random(1), 3, 21)
    with pytest.raises(GuardExceeded):
        mns_bruteforce(inst, (0,) * 21, set(range(21)), {0, 1, 2})


def test_random_mns_matches_bruteforce():
    rng = random.Random(11)
    for _ in range(150):
        inst, s = random_case(rng, n_max=10, k_max=6, weighted=rng.random() < 0.3)
        F = set(range(inst.k))
        V = set(rng.sample(range(inst.n), rng.randint(0, inst.n)))
        assert mns(inst, s, F, V) == mns_bruteforce(inst, s, F, V)


def test_class_set_properties():
    rng = random.Random(12)
    for _ in range(150):
        inst, s = random_case(rng, n_max=9, k_max=5)
        cs = class_set(inst, s)
        loads = cs.loads()
        assert all(a < b for a, b in zip(loads, loads[1:]))
        covered = {v for v in range(inst.n) if shopping_range(inst, s, v)}
        assert set().union(*(c.clients for c in cs.classes)) == covered
        for c in cs.classes:
            assert c.avg_load == inst.graph.weight_of(c.clients) / len(c.facilities)
        for v in covered:
            first = min(i for i, c in enumerate(cs.classes) if c.facilities & shopping_range(inst, s, v))
            assert cs.class_of_client[v] == first
        ref = classes_bruteforce(inst, s)
        assert [(c.facilities, c.clients, c.avg_load) for c in cs.classes] == ref


def test_class_set_independent_of_facility_order():
    rng = random.Random(13)
    for _ in range(60):
        inst, s = random_case(rng, n_max=8, k_max=4)
        perm = list(range(inst.k))
        rng.shuffle(perm)
        s2 = tuple(s[p] for p in perm)
        a = class_set(inst, s)
        b = class_set(Instance(inst.graph, inst.k), s2)
        relabel = [{perm[f] for f in c.facilities} for c in b.classes]
        assert relabel == [set(c.facilities) for c in a.classes]
        assert a.loads() == b.loads()
