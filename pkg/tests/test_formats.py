import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomicflg.classes import class_set
from atomicflg.errors import InputError
from atomicflg.formats import (instance_from_dict, instance_to_dict, parse_dimacs, parse_instance,
                               render_json, render_tsv, serialize_instance, to_dot)
from atomicflg.instances import NAMED_INSTANCES, gen_paper_instance, random_cnf, random_instance, reduce_sat


def _roundtrip(inst):
    back = parse_instance(serialize_instance(inst))
    assert instance_to_dict(back) == instance_to_dict(inst)
    assert back.graph.weights == inst.graph.weights
    assert back.allowed == inst.allowed


@pytest.mark.parametrize("name", sorted(NAMED_INSTANCES))
def test_roundtrip_named(name):
    _roundtrip(gen_paper_instance(name))


def test_roundtrip_reduction():
    f = random_cnf(random.Random(3), 2, 4)
    _roundtrip(reduce_sat(f, Fraction(5, 4), Fraction(1, 100)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 7), st.integers(1, 3), st.booleans(), st.booleans())
def test_roundtrip_random(seed, n, k, weighted, restricted):
    _roundtrip(random_instance(random.Random(seed), n, k, 0.4, weighted, restricted))


def _doc():
    return {"format": "atomicflg-instance", "version": 1,
            "vertices": [{"id": "a", "weight": "1"}, {"id": "b", "weight": "3/2"}],
            "edges": [["b", "a"]], "facilities": {"k": 1, "allowed": "all"}}


def test_minimal_document():
    inst = instance_from_dict(_doc())
    assert inst.n == 2 and inst.k == 1 and inst.graph.weights[1] == Fraction(3, 2)


@pytest.mark.parametrize("mutate, where", [
    (lambda d: d.update(version=2), "$.version"),
    (lambda d: d.update(format="other"), "$.format"),
    (lambda d: d["vertices"][0].update(weight="-1"), "$.vertices[0].weight"),
    (lambda d: d["vertices"][0].update(weight="x"), "$.vertices[0].weight"),
    (lambda d: d["vertices"][0].update(weight=1.5), "$.vertices[0].weight"),
    (lambda d: d["vertices"][1].update(id="a"), "$.vertices[1].id"),
    (lambda d: d["edges"].append(["a", "z"]), "$.edges[1][1]"),
    (lambda d: d["edges"].append(["a", "a"]), "$.edges[1]"),
    (lambda d: d["facilities"].update(k=0), "$.facilities.k"),
    (lambda d: d["facilities"].update(allowed=[["a"], ["b"]]), "$.facilities.allowed"),
    (lambda d: d["facilities"].update(allowed=[[]]), "$.facilities.allowed[0]"),
])
def test_bad_documents(mutate, where):
    doc = _doc()
    mutate(doc)
    with pytest.raises(InputError, match=__import__("re").escape(where)):
        instance_from_dict(doc)


def test_json_syntax_error_position():
    with pytest.raises(InputError, match="line 2"):
        parse_instance('{\n  "version": }')


def test_dimacs():
    f = parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n2 3\n0\n")
    assert f.m == 3 and f.t == 2
    with pytest.raises(InputError):
        parse_dimacs("1 2 0\n")
    with pytest.raises(InputError):
        parse_dimacs("p cnf 2 1\n1 x 0\n")


def test_render_json_and_tsv_agree():
    doc = {"a": Fraction(1, 3), "b": [1, 2], "rows": [{"x": 1, "y": "q"}, {"x": 2, "z": 3}]}
    assert json.loads(render_json(doc))["a"] == "1/3"
    tsv = render_tsv(doc).splitlines()
    assert tsv[:2] == ["a\t1/3", "b\t1,2"]
    assert tsv[3:] == ["# rows", "x\ty\tz", "1\tq\t", "2\t\t3"]


def test_dot_export():
    inst = gen_paper_instance("fig3")
    text = to_dot(inst, (0, 1, 2), class_set(inst, (0, 1, 2)))
    assert text.startswith("digraph") and '"v1" -> "f1";' in text
    assert "class 2" in text and "doublecircle" in text
