import db


def test_cache_rows(tmp_path):
    path = str(tmp_path / "inv.db")
    db.init_db(path)
    assert db.get_cached("k", "jones", path) is None
    db.put_cached("k", "jones", "t + 1", "t + 1", path)
    db.put_cached("k", "vcoeffs:2", ["1", "0", "-3"], "[1, 0, -3]", path)
    assert db.get_cached("k", "jones", path) == ("t + 1", "t + 1")
    assert db.get_cached("k", "vcoeffs:2", path) == (["1", "0", "-3"], "[1, 0, -3]")
    assert db.count_cached(path) == 2


def test_upsert_replaces_the_value(tmp_path):
    path = str(tmp_path / "inv.db")
    db.init_db(path)
    db.put_cached("k", "f", "1", "1", path)
    db.put_cached("k", "f", "A", "A", path)
    assert db.get_cached("k", "f", path) == ("A", "A")
    assert db.count_cached(path) == 1
