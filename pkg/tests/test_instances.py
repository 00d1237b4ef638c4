import random
from fractions import Fraction

import pytest
from oracles import closed_nbhd

from atomicflg.analysis import sat_certificate
from atomicflg.errors import InputError
from atomicflg.instances import (NAMED_INSTANCES, CnfFormula, fig3, fig5_right, fig5_right_weights,
                                 fig8, gen_paper_instance, named_placement, random_cnf,
                                 reduce_sat, reduction_counts, sat_placement)
from atomicflg.scalar import GOLDEN_RATIO as PHI
from atomicflg.spe import verify_spe


@pytest.mark.parametrize("name", sorted(NAMED_INSTANCES))
def test_named_instances_build(name):
    inst = gen_paper_instance(name)
    assert inst.n >= 1 and inst.k >= 1


def test_unknown_name():
    with pytest.raises(InputError):
        gen_paper_instance("nope")
    with pytest.raises(InputError):
        named_placement("fig5_left", gen_paper_instance("fig5_left"))


def test_fig3_shape():
    inst = fig3()
    assert inst.n == 9 and inst.k == 3
    assert named_placement("fig3", inst) == (0, 1, 2)


def test_fig8_layout():
    for k in range(2, 6):
        inst = fig8(k)
        assert inst.n == 2 * k
        for i in range(k):
            assert closed_nbhd(inst, k + i) == {k + i}
            assert closed_nbhd(inst, i) == set(range(k)) | {k + i}


def test_fig5_right_weights_sum():
    eps = Fraction(1, 100)
    w = fig5_right_weights(eps)
    assert len(w) == 6 and all(x > 0 for x in w.values())
    assert fig5_right(eps).n == 6


def test_cnf_validation():
    with pytest.raises(InputError):
        CnfFormula(2, ({3},))
    with pytest.raises(InputError):
        CnfFormula(2, (set(),))
    f = CnfFormula(2, ({1, -2}, {2}))
    assert f.satisfied_by((True, True)) and not f.satisfied_by((False, False))


def test_reduction_counts_match():
    rng = random.Random(41)
    for _ in range(20):
        f = random_cnf(rng, rng.randint(1, 3), rng.randint(4, 6))
        inst = reduce_sat(f, Fraction(5, 4), Fraction(1, 100))
        c = reduction_counts(f)
        assert inst.n == c["vertices"] and inst.k == c["facilities"]
        assert len(inst.graph.edges) == c["edges"]


def test_reduction_parameter_checks():
    f = CnfFormula(1, ({1},) * 4)
    with pytest.raises(InputError):
        reduce_sat(CnfFormula(1, ({1},) * 3), Fraction(5, 4), Fraction(1, 100))
    with pytest.raises(InputError):
        reduce_sat(f, PHI, Fraction(1, 100))
    with pytest.raises(InputError):
        reduce_sat(f, Fraction(5, 4), Fraction(1, 2))


def test_satisfying_assignment_gives_spe():
    f = CnfFormula(1, ({1},) * 4)
    inst = reduce_sat(f, Fraction(5, 4), Fraction(1, 100))
    cert = sat_certificate(inst, f, (True,))
    assert verify_spe(inst, cert, Fraction(5, 4)) is None
    with pytest.raises(InputError):
        sat_certificate(inst, f, (False,))
    with pytest.raises(InputError):
        sat_placement(inst, f, (True, False))
