"""
Shared fixtures: small charts and a model loader.
"""

from pathlib import Path

import pytest

from fnlie.dsl import parse_model
from fnlie.qbundle import QChart
from fnlie.scalar import make_chart

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def plane():
    return make_chart(("x", "y"))


@pytest.fixture
def space():
    return make_chart(("x", "y", "z"))


@pytest.fixture
def qplane(plane):
    return QChart.over(plane)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def model():
    """Parse model text, dedented line by line."""
    def build(text: str):
        return parse_model("\n".join(line.strip() for line in text.strip().splitlines()) + "\n")
    return build
