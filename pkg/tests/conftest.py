import pytest

from canonical_section import Composition, build_section


@pytest.fixture
def comp():
    return lambda *parts: Composition(tuple(parts))


@pytest.fixture
def section():
    return lambda *parts: build_section(Composition(tuple(parts)))
