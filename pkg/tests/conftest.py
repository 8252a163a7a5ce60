import pytest

from glidesim.config import load_scenario
from glidesim.mission import run_mission


@pytest.fixture(scope="session")
def paper_default():
    """The bundled reference scenario, loaded once."""
    return load_scenario("paper_default")


@pytest.fixture(scope="session")
def paper_default_run(paper_default):
    """One full reference mission, shared across tests that only read it."""
    design, scenario = paper_default
    log, summary = run_mission(design, scenario)
    return design, scenario, log, summary
