import random
from fractions import Fraction
from itertools import product

import pytest
from conftest import random_case
from oracles import all_pure_assignments, is_pure_equilibrium, pure_loads

from atomicflg.client_eq import GreedyPolicy, RoundedPolicy
from atomicflg.errors import CertificateError, GuardExceeded, InputError, UnsupportedModeError
from atomicflg.game import ClientProfile, HostGraph, Instance
from atomicflg.instances import fig3, fig5_left, fig5_right, fig6, fig8, random_instance
from atomicflg.scalar import GOLDEN_RATIO
from atomicflg.spe import (DeviationWitness, FppReport, PartialCertificate, ProfileWitness,
                           build_certificate, deviations, find_spe, improving_moves, k_approx_spe,
                           spe_exists, stabilizing_certificate, verify_spe)


def test_deviation_order():
    inst = fig6()
    assert [(f, v) for f, v, _ in deviations(inst, (0, 1))] == [(0, 1), (0, 2), (1, 0), (1, 2)]


def test_improving_moves_fig3():
    inst = fig3()
    moves = improving_moves(inst, (0, 1, 2), RoundedPolicy(inst))
    assert moves and all(m.new > m.old for m in moves)
    assert improving_moves(inst, (0, 1, 2), RoundedPolicy(inst), alpha=100) == []
    with pytest.raises(InputError):
        improving_moves(inst, (0, 1, 2), RoundedPolicy(inst), alpha=Fraction(1, 2))


def test_find_spe_fig3():
    inst = fig3()
    s, cert, trace = find_spe(inst)
    assert verify_spe(inst, cert) is None
    assert trace.iterations == 2


def test_find_spe_random():
    rng = random.Random(31)
    for _ in range(80):
        n, k = rng.randint(1, 8), rng.randint(1, 3)
        inst = random_instance(rng, n, k, density=rng.choice([0.2, 0.4]), restricted=rng.random() < 0.3)
        s, cert, trace = find_spe(inst)
        assert verify_spe(inst, cert) is None
        for step in trace.steps[1:]:
            assert step.sort_after > step.sort_before


def test_find_spe_rejects_weights():
    with pytest.raises(UnsupportedModeError):
        find_spe(fig5_left())


def test_verify_reports_profile_violation():
    star = Instance(HostGraph.build({"a": 1, "b": 1, "c": 1}, [("b", "a"), ("c", "a")]), 2)
    cert = build_certificate(star, (0, 0), RoundedPolicy(star))
    bad = dict(cert.profiles)
    bad[(0, 0)] = ClientProfile.from_assignment(star, {0: 0, 1: 0, 2: 0})
    w = verify_spe(star, PartialCertificate((0, 0), bad))
    assert isinstance(w, ProfileWitness) and w.placement == (0, 0)


def test_verify_missing_profile():
    inst = fig6()
    with pytest.raises(CertificateError):
        verify_spe(inst, PartialCertificate((0, 1), {}))


def test_gadget_deviation_witness():
    inst = fig5_right(Fraction(1, 100))
    cert = build_certificate(inst, (0, 4), GreedyPolicy(inst))
    w = verify_spe(inst, cert, GOLDEN_RATIO - Fraction(1, 10))
    assert isinstance(w, DeviationWitness)
    assert w.facility == 1 and inst.graph.names[w.vertex] == "v2"
    assert w.factor == GOLDEN_RATIO * (1 - Fraction(1, 200))


def test_k_approx_unrestricted_weighted():
    rng = random.Random(32)
    for _ in range(60):
        inst, _ = random_case(rng, n_max=9, k_max=4, weighted=True)
        s, cert = k_approx_spe(inst)
        assert len(set(s)) == 1
        assert verify_spe(inst, cert, inst.k) is None


def test_k_approx_fig5():
    inst = fig5_left()
    s, cert = k_approx_spe(inst)
    assert s == (1, 1)
    assert verify_spe(inst, cert, 2) is None
    assert verify_spe(inst, cert, 1) is not None


def test_spe_exists_small_cases():
    assert not spe_exists(fig5_left(), 1).exists
    d = spe_exists(fig5_left(), 2)
    assert d.exists and verify_spe(fig5_left(), d.certificate, 2) is None
    d = spe_exists(fig8(2), 1)
    assert d.exists and d.placement == (0, 0)


def test_spe_exists_guard():
    inst = Instance(HostGraph.build({str(i): 1 for i in range(20)}, []), 2)
    with pytest.raises(GuardExceeded):
        spe_exists(inst)


def test_fpp_report():
    out = stabilizing_certificate(fig5_left(), (0, 1), 1)
    assert isinstance(out, FppReport) and out.placement == (0, 1)


def _pure_certificate_exists(inst, alpha):
    """Brute force over pure equilibria only, sufficient but not necessary for an SPE."""
    spaces = [sorted(a) for a in inst.allowed]
    eqs = {}

    def pure_eqs(s):
        if s not in eqs:
            eqs[s] = [pure_loads(inst, s, a) for a in all_pure_assignments(inst, s)
                      if is_pure_equilibrium(inst, s, a)]
        return eqs[s]

    for s in product(*spaces):
        need = [Fraction(0)] * inst.k
        for f in range(inst.k):
            for v in spaces[f]:
                if v != s[f]:
                    s2 = s[:f] + (v,) + s[f + 1:]
                    need[f] = max(need[f], min(l[f] for l in pure_eqs(s2)))
        if any(all(alpha * l[f] >= need[f] for f in range(inst.k)) for l in pure_eqs(s)):
            return True
    return False


def test_spe_exists_against_pure_search():
    rng = random.Random(33)
    done = 0
    while done < 25:
        inst, _ = random_case(rng, n_max=4, k_max=2, weighted=True)
        if inst.k < 2:
            continue
        done += 1
        for alpha in (1, Fraction(3, 2)):
            d = spe_exists(inst, alpha)
            if _pure_certificate_exists(inst, alpha):
                assert d.exists
            if d.exists:
                assert verify_spe(inst, d.certificate, alpha) is None


def test_spe_exists_monotone_in_alpha():
    rng = random.Random(34)
    for _ in range(15):
        inst, _ = random_case(rng, n_max=4, k_max=2, weighted=True)
        seen = False
        for alpha in (1, Fraction(5, 4), Fraction(3, 2), 2):
            d = spe_exists(inst, alpha)
            assert d.exists or not seen
            seen = seen or d.exists
        assert seen  # factor k = 2 always suffices for unrestricted instances
