import pytest

from services import skein
from services.fixtures import load
from services.laurent import parse_poly


@pytest.fixture
def trefoil():
    return load("3_1")


@pytest.fixture
def trefoil_pd():
    return load("3_1_pd")


@pytest.fixture
def figure_eight():
    return load("4_1")


@pytest.fixture
def hopf():
    return load("hopf")


@pytest.fixture
def unknot_diagram():
    return load("unknot")


@pytest.fixture
def virtual_trefoil():
    return load("virtual_trefoil")


@pytest.fixture(autouse=True)
def _fresh_skein_cache():
    skein.clear_cache()
    yield


@pytest.fixture
def poly():
    return parse_poly
