from services.fixtures import FIXTURES, fixtures_by_name
from services.fuzz import fuzz_sequence, invariants_for, run_fuzz


def test_invariants_per_fixture():
    trefoil = FIXTURES["3_1"]
    assert invariants_for(trefoil, trefoil.load()) == ("f", "jones", "conway", "alexander", "khovanov")
    t34 = FIXTURES["T3_4"]
    assert "khovanov" not in invariants_for(t34, t34.load())
    virtual = FIXTURES["virtual_trefoil"]
    assert invariants_for(virtual, virtual.load()) == ("arrow",)


def test_classical_sequences_keep_invariants():
    summary = run_fuzz(fixtures_by_name(["3_1", "4_1"]), sequences=3, length=8, seed=1)
    assert summary.sequences == 6
    assert summary.checks == 6 * 5
    assert summary.passed, [f.to_json() for f in summary.failures]


def test_virtual_sequences_keep_the_arrow_polynomial():
    summary = run_fuzz(fixtures_by_name(["virtual_trefoil"]), sequences=3, length=8, seed=2)
    assert summary.passed, [f.to_json() for f in summary.failures]


def test_sequences_are_reproducible():
    fixture = FIXTURES["3_1"]
    assert fuzz_sequence(fixture, 0, 5, 10) == fuzz_sequence(fixture, 0, 5, 10)


def test_threads_do_not_change_the_result():
    fixtures = fixtures_by_name(["3_1", "hopf"])
    serial = run_fuzz(fixtures, sequences=2, length=6, seed=3)
    threaded = run_fuzz(fixtures, sequences=2, length=6, seed=3, threads=3)
    assert (serial.sequences, serial.moves, serial.checks) == (threaded.sequences, threaded.moves, threaded.checks)
