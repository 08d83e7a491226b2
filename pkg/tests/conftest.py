# Third party
import pytest

# Local
from qubitradiometer.dtos import (
    BathPopulations,
    ModeParams,
    PulseTiming,
    QubitParams,
    ReadoutModel,
)


@pytest.fixture
def params() -> ModeParams:
    return ModeParams.from_linewidths()


@pytest.fixture
def baths() -> BathPopulations:
    return BathPopulations()


@pytest.fixture
def qubit() -> QubitParams:
    return QubitParams()


@pytest.fixture
def timing() -> PulseTiming:
    return PulseTiming()


@pytest.fixture
def readout() -> ReadoutModel:
    return ReadoutModel()
