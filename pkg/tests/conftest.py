import json
import sys
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from kahlercoh import BundleModel, build_onb  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ORACLES = json.loads((Path(__file__).parent / "data" / "oracles.json").read_text())


@lru_cache(maxsize=None)
def basis_for(descriptor: str):
    return build_onb(BundleModel.parse(descriptor))


@pytest.fixture(scope="session")
def oracles():
    return ORACLES


@pytest.fixture(scope="session")
def p1_bases():
    return {m: basis_for(f"P1:m={m}") for m in range(1, 6)}


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(test_acceptance.VERDICTS, key=lambda k: int(k[1:])):
            terminalreporter.write_line(test_acceptance.VERDICTS[key])
