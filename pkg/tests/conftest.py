"""
Fixtures compartidas
"""

import pytest

from ff_pseudoarc.core.structures import RelStructure, antidiagonal_structure, linear_graph
from ff_pseudoarc.services import worked_example


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Sin .env del repositorio ni variables FF_ heredadas."""
    import os

    for key in list(os.environ):
        if key.startswith("FF_"):
            monkeypatch.delenv(key, raising=False)
    monkeypatch.chdir(tmp_path)
    yield tmp_path


@pytest.fixture
def plain2_antidiagonal() -> RelStructure:
    return antidiagonal_structure(linear_graph("plain", 2))


@pytest.fixture
def example_one() -> RelStructure:
    return worked_example.example_one()


@pytest.fixture
def example_two() -> RelStructure:
    return worked_example.example_two()


@pytest.fixture
def example_maps():
    return worked_example.example_phi1(), worked_example.example_phi2()
