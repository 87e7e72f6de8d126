import contextlib

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_configure(config):
    config.acceptance_results = {}


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line for an acceptance criterion."""
    results = request.config.acceptance_results

    @contextlib.contextmanager
    def run(n, title):
        note = {"detail": ""}
        try:
            yield note
        except BaseException as exc:
            msg = str(exc).splitlines()[0][:120] if str(exc) else ""
            results[n] = ("FAIL", title, f"{type(exc).__name__}: {msg}")
            raise
        else:
            results[n] = ("PASS", title, note["detail"])
    return run


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "acceptance_results", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        status, title, detail = results[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}" + (f"  [{detail}]" if detail else ""))
