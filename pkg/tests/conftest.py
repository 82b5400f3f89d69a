import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test body sets ``detail`` and asserts."""
    record = {"name": request.node.name, "detail": ""}
    yield record
    call = getattr(request.node, "rep_call", None)
    passed = bool(call and call.passed)
    _ACCEPTANCE.append((record["name"], passed, record["detail"]))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")


def random_instances(count, seed, dmax=4, lo=-5, hi=10, mmax=3, extra=3):
    """Seeded (T, d, m) with d in [1, dmax], |T| in [d+1, d+extra], distinct t in [lo, hi]."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        d = rng.randint(1, dmax)
        n = rng.randint(d + 1, d + extra)
        T = tuple(sorted(rng.sample(range(lo, hi + 1), n)))
        out.append((T, d, rng.randint(1, mmax)))
    return out
