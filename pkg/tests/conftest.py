import pytest
from hypothesis import settings

from segredecomp.gf import Field
from segredecomp.segre import SegreEmbedding


# The first galois call compiles through numba and can take hundreds of ms
settings.register_profile('segredecomp', deadline=None, max_examples=100)
settings.load_profile('segredecomp')


@pytest.fixture
def gf2():
    return Field(2)


@pytest.fixture
def gf3():
    return Field(3)


@pytest.fixture
def gf4():
    return Field(2, 2)


@pytest.fixture
def segre_table(gf2):
    """The Segre embedding of PG(2, 2) x PG(1, 2) into PG(5, 2)."""
    return SegreEmbedding(gf2, 2, 1).tabulate()


@pytest.fixture
def write_file(tmp_path):
    def _write(name, content):
        path = tmp_path / name
        path.write_text(content)
        return str(path)

    return _write


# vim:sw=4:ts=4:et:
