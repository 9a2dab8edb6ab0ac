import pytest

from cdaub.daub_reference import daubechies_filter, reference_waveform

_cache = {}


def cascade(N, kind="wavelet", J=10):
    key = (N, kind, J)
    if key not in _cache:
        _cache[key] = reference_waveform(N, kind, J)
    return _cache[key]


@pytest.fixture(scope="session")
def cascade_ref():
    """Memoized ``reference_waveform(N, kind, J)``."""
    return cascade


@pytest.fixture(scope="session", params=range(1, 11), ids=lambda n: f"db{n}")
def any_spec(request):
    return daubechies_filter(request.param)


# -- acceptance summary --------------------------------------------------------

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        name, ok, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] AC{n:<2} {name}: {detail}")
