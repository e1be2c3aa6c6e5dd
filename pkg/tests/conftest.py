import os

import pytest
from hypothesis import HealthCheck, settings

from conic_lab.algebra.poly import PolyRing
from conic_lab.algebra.scalars import QQ, QQs

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def ring():
    return PolyRing(QQ)


@pytest.fixture
def ring_s():
    return PolyRing(QQs)


ACK_ENV = "CONIC_LAB_ACK_FINDINGS"


def pytest_addoption(parser):
    parser.addoption(
        "--ack-findings",
        action="store_true",
        help=f"acknowledge experiment findings in the soft acceptance gate (or set {ACK_ENV}=1)",
    )


@pytest.fixture
def ack_findings(request):
    return request.config.getoption("--ack-findings") or os.environ.get(ACK_ENV) == "1"
