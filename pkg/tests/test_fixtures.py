import pytest

from services.fixtures import CLASSICAL_FIXTURES, VIRTUAL_FIXTURES, braid_corpus, fixtures_by_name, load


def test_fixtures_by_name():
    picked = fixtures_by_name(["4_1", "virtual_trefoil"])
    assert [f.name for f in picked] == ["4_1", "virtual_trefoil"]
    assert [f.is_virtual for f in picked] == [False, True]


def test_unknown_fixture():
    with pytest.raises(KeyError):
        load("9_99")


@pytest.mark.parametrize("fixture", CLASSICAL_FIXTURES + VIRTUAL_FIXTURES, ids=lambda f: f.name)
def test_fixtures_load_connected(fixture):
    assert fixture.load().is_connected()


def test_braid_corpus_closures_are_connected():
    corpus = braid_corpus(20, 8, seed=3)
    assert len(corpus) == 20
    for f in corpus:
        assert {abs(g) for g in f.word} == set(range(1, f.n_strands))
        assert f.load().is_connected()
    assert [f.code for f in corpus] == [f.code for f in braid_corpus(20, 8, seed=3)]
