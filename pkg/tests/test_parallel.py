from concurrent.futures.process import BrokenProcessPool

from segredecomp import _parallel
from segredecomp._parallel import shard_map


def test_serial():
    assert shard_map(sorted, [3, 1, 2]) == [1, 2, 3]
    assert shard_map(sorted, [], 4) == []


def test_chunks_keep_their_order():
    items = [9, 8, 7, 6, 5, 4, 3]
    # Two chunks of four and three items, each sorted on its own
    assert shard_map(sorted, items, 2) == [6, 7, 8, 9, 3, 4, 5]


def test_broken_pool_falls_back(monkeypatch):
    class Broken:
        def __init__(self, *args, **kwargs):
            raise BrokenProcessPool('A child process terminated abruptly')

    monkeypatch.setattr(_parallel, 'ProcessPoolExecutor', Broken)
    assert shard_map(sorted, [3, 1, 2], 2) == [1, 2, 3]


# vim:sw=4:ts=4:et:
