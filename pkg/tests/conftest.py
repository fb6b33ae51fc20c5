import numpy as np
import pytest

from cournot_energy import TwoGroupParams


@pytest.fixture
def fig1_market():
    return TwoGroupParams(n_q=1, n_c=1, a_q=10, a_c=10, theta_q=3, theta_c=2,
                          gamma_qq=2, gamma_cc=2, gamma_qc=1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


CRITERIA: dict[str, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion covered by the test")


@pytest.fixture(autouse=True)
def _record_criterion(request):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        request.node.user_properties.append(("criterion", marker.args[0]))


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.failed):
        label = dict(report.user_properties).get("criterion")
        if label is not None:
            CRITERIA.setdefault(label, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(CRITERIA, key=lambda s: (int(s.rstrip("abcdefgh")), s)):
        status = "PASS" if all(CRITERIA[label]) else "FAIL"
        terminalreporter.write_line(f"criterion {label}: {status}")
