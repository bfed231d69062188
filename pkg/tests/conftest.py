import importlib

import pytest

from cmcgraph import _pycore

try:
    from cmcgraph import _core
except ImportError:  # extension not built
    _core = None

BACKENDS = [pytest.param(_pycore, id="python")]
BACKENDS.append(
    pytest.param(_core, id="cython", marks=pytest.mark.skipif(_core is None, reason="extension not built"))
)


@pytest.fixture(params=BACKENDS)
def core(request):
    return request.param


@pytest.fixture
def pure_python_kernels(monkeypatch):
    """Reload ``cmcgraph.kernels`` with the fallback forced, then restore it."""
    import cmcgraph.kernels as kernels

    monkeypatch.setenv("CMCGRAPH_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    yield mod
    monkeypatch.delenv("CMCGRAPH_PURE_PYTHON")
    importlib.reload(kernels)


_CRITERIA = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_CRITERIA] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(n, title, status, detail)``."""

    def record(number, title, ok, detail=""):
        status = ok if isinstance(ok, str) else ("PASS" if ok else "FAIL")
        request.config.stash[_CRITERIA].append((number, title, status, detail))

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = sorted(config.stash.get(_CRITERIA, []), key=lambda t: (int(str(t[0]).rstrip("ab")), str(t[0])))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status, detail in lines:
        terminalreporter.write_line(f"[{status:5s}] criterion {number!s:>3}: {title} | {detail}")
