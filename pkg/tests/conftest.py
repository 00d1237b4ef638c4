import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from atomicflg.flow import FlowNetwork  # noqa: E402
from atomicflg.instances import random_instance, random_placement  # noqa: E402

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.fixture
def rng():
    return random.Random(20240601)


def random_case(rng, n_max=8, k_max=3, density=0.3, **kw):
    """A random instance together with a random placement."""
    n = rng.randint(1, n_max)
    k = rng.randint(1, k_max)
    inst = random_instance(rng, n, k, density, **kw)
    return inst, random_placement(rng, inst)


def random_dag(rng, n_arcs=None, cap_max=2, cost_range=(-3, 6)):
    """Small acyclic network, source 0 and sink n-1, possibly parallel arcs."""
    n = rng.randint(3, 5)
    arcs = []
    for _ in range(rng.randint(1, 10) if n_arcs is None else n_arcs):
        u = rng.randrange(0, n - 1)
        v = rng.randrange(u + 1, n)
        arcs.append((u, v, rng.randint(0, cap_max), rng.randint(*cost_range)))
    return FlowNetwork(n, 0, n - 1, tuple(arcs))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    detail = dict(item.user_properties).get("detail", "")
    _CRITERIA[number] = (title, rep.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, detail = _CRITERIA[number]
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
        tr.write_line(line + (f"  [{detail}]" if detail else ""))
