import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mrex import circuit_network

CIRCUIT_EVIDENCE = {"Input": 1, "TotalOutput": 1}


@pytest.fixture(scope="session")
def circuit():
    return circuit_network()


@pytest.fixture(scope="session")
def circuit_evidence():
    return dict(CIRCUIT_EVIDENCE)
