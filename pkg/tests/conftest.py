import pytest
from hypothesis import HealthCheck, settings

from ulrich.pipeline import build_residual_scheme, build_ulrich_module, generate_instance

settings.register_profile("default", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def instance3():
    return generate_instance(3, seed=1)


@pytest.fixture(scope="session")
def residual3(instance3):
    return build_residual_scheme(instance3)


@pytest.fixture(scope="session")
def candidate3(instance3, residual3):
    return build_ulrich_module(instance3, residual3)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
