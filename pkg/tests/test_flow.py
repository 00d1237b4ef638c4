import random

import pytest
from conftest import random_dag
from oracles import all_min_cut_sides, best_integral_flow, min_cut_value

from atomicflg.errors import InputError
from atomicflg.flow import FlowNetwork, cut_capacity, max_cost_flow, max_flow, max_source_side_min_cut
from atomicflg.scalar import GOLDEN_RATIO, Scalar


def test_single_and_parallel_paths():
    assert max_flow(FlowNetwork(2, 0, 1, ((0, 1, 7, 0),))).value == 7
    net = FlowNetwork(4, 0, 3, ((0, 1, 2, 0), (1, 3, 2, 0), (0, 2, 3, 0), (2, 3, 3, 0)))
    assert max_flow(net).value == 5


def test_disconnected_is_zero():
    res = max_flow(FlowNetwork(3, 0, 2, ((0, 1, 4, 0),)))
    assert res.value == 0


def test_exact_scalar_capacities():
    net = FlowNetwork(3, 0, 2, ((0, 1, GOLDEN_RATIO, 0), (1, 2, Scalar(2), 0)))
    assert max_flow(net).value == GOLDEN_RATIO


def test_maximal_source_side():
    # arcs 0->1 and 1->2 both saturate at 1: two min cuts, {0} and {0, 1}
    net = FlowNetwork(3, 0, 2, ((0, 1, 1, 0), (1, 2, 1, 0)))
    res = max_flow(net)
    assert res.source_side == {0}
    assert max_source_side_min_cut(net, res) == {0, 1}


def test_stale_result_rejected():
    net = FlowNetwork(3, 0, 2, ((0, 1, 1, 0), (1, 2, 1, 0)))
    other = FlowNetwork(3, 0, 2, ((0, 1, 2, 0), (1, 2, 2, 0)))
    with pytest.raises(InputError):
        max_source_side_min_cut(other, max_flow(net))


@pytest.mark.parametrize("arcs", [((1, 0, 1, 0),), ((0, 1, -1, 0),), ((0, 5, 1, 0),)])
def test_malformed_networks(arcs):
    with pytest.raises(InputError):
        FlowNetwork(3, 0, 2, arcs)


def test_max_cost_parallel_arcs():
    net = FlowNetwork(2, 0, 1, ((0, 1, 1, 1), (0, 1, 1, 5), (0, 1, 0, 9)))
    res = max_cost_flow(FlowNetwork(3, 0, 2, ((0, 1, 1, 0), (1, 2, 1, 1), (1, 2, 1, 5))))
    assert res.value == 1 and res.cost == 5
    assert max_cost_flow(net).cost == 6


def test_zero_capacity():
    res = max_cost_flow(FlowNetwork(2, 0, 1, ((0, 1, 0, 3),)))
    assert res.value == 0 and res.cost == 0


def test_max_cost_needs_integers():
    with pytest.raises(InputError):
        max_cost_flow(FlowNetwork(2, 0, 1, ((0, 1, Scalar(1), 0),)))


def test_big_integer_costs():
    big = 2 ** 80
    net = FlowNetwork(4, 0, 3, ((0, 1, 1, 0), (0, 2, 1, 0), (1, 3, 1, big), (2, 3, 1, big + 1)))
    res = max_cost_flow(net)
    assert res.value == 2 and res.cost == 2 * big + 1


def test_random_duality_and_cost_optimality():
    rng = random.Random(7)
    for _ in range(300):
        net = random_dag(rng)
        res = max_flow(net)
        assert res.value == min_cut_value(net) == cut_capacity(net, res.source_side)
        side = max_source_side_min_cut(net, res)
        sides = all_min_cut_sides(net)
        assert side in sides and all(s <= side for s in sides)
        mc = max_cost_flow(net)
        assert (mc.value, mc.cost) == best_integral_flow(net)
        assert all(isinstance(f, int) for f in mc.flow)
