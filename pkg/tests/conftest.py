import shutil
import tempfile

import pytest

from src.groups.abelian import AbelianSplitting
from src.groups.affine import AffineSplitting
from src.groups.dihedral import DihedralSplitting
from src.groups.heisenberg import HeisenbergSplitting


@pytest.fixture
def temp_data_dir():
    """Create a temporary data directory for testing."""
    # Create temporary directory
    temp_dir = tempfile.mkdtemp()

    # Yield the directory path
    yield temp_dir

    # Clean up after test
    shutil.rmtree(temp_dir)


@pytest.fixture
def plane():
    """The abelian plane R x R with the axes splitting."""
    return AbelianSplitting(1, 1)


@pytest.fixture
def heisenberg():
    return HeisenbergSplitting()


@pytest.fixture
def affine():
    """Translations as the normal factor, dilations as the codomain."""
    return AffineSplitting()


@pytest.fixture
def affine_swap():
    """Dilations as N, the normal translations as the codomain."""
    return AffineSplitting(swap=True)


@pytest.fixture
def d4():
    return DihedralSplitting(4)


@pytest.fixture
def d8():
    return DihedralSplitting(8)
