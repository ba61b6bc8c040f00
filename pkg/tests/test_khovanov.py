import pytest

from services.bracket import normalized_jones
from services.errors import ComplexError, NonPlanar, TooManyCrossings
from services.fixtures import CLASSICAL_FIXTURES
from services.diagram import mirror
from services.khovanov import (
    Generator,
    HomologyGroup,
    KhovanovComplex,
    build_complex,
    chain_ranks_by_tier,
    check_d_squared,
    check_frobenius,
    graded_euler,
    homology,
    homology_euler,
    khovanov_homology,
    mapping_cone_holds,
    poincare_polynomial,
)
from services.laurent import A, LOOP_VALUE
from services.smith import IntMatrix

Z = HomologyGroup(1)


def test_unknot(unknot_diagram):
    assert khovanov_homology(unknot_diagram).groups == {(0, -1): Z, (0, 1): Z}


def test_trefoil(trefoil):
    assert khovanov_homology(trefoil).groups == {
        (0, 1): Z,
        (0, 3): Z,
        (2, 5): Z,
        (3, 7): HomologyGroup(0, (2,)),
        (3, 9): Z,
    }


def test_hopf(hopf):
    assert khovanov_homology(hopf).groups == {(0, 0): Z, (0, 2): Z, (2, 4): Z, (2, 6): Z}


def test_trefoil_chain_ranks(trefoil):
    assert chain_ranks_by_tier(trefoil) == [4, 6, 12, 8]
    assert build_complex(trefoil).ranks() == {0: 4, 1: 6, 2: 12, 3: 8}


def test_table_rendering(trefoil, poly):
    table = khovanov_homology(trefoil)
    assert {"i": 3, "j": 7, "free": 0, "torsion": [2]} in table.to_json()
    assert "Z/2" in table.to_text()
    assert poincare_polynomial(table) == poly("q + q^3 + q^5*t^2 + q^9*t^3")


def test_group_text():
    assert HomologyGroup(2, (2, 4)).to_text() == "Z^2+Z/2+Z/4"
    assert HomologyGroup(0).to_text() == "0"


def test_mirror_reflects_free_ranks(trefoil):
    table = khovanov_homology(trefoil)
    mirrored = khovanov_homology(mirror(trefoil))
    free = {(i, j): g.free for (i, j), g in table.groups.items() if g.free}
    mirrored_free = {(-i, -j): g.free for (i, j), g in mirrored.groups.items() if g.free}
    assert mirrored_free == free


@pytest.mark.parametrize(
    "fixture", [f for f in CLASSICAL_FIXTURES if len(f.load().crossings) <= 6], ids=lambda f: f.name
)
def test_euler_characteristic_recovers_the_bracket(fixture):
    d = fixture.load()
    cx = build_complex(d)
    chi = graded_euler(cx)
    assert chi == homology_euler(homology(cx))
    assert chi.substitute("q", -(A ** -2)) == LOOP_VALUE * normalized_jones(d).f


@pytest.mark.slow
@pytest.mark.parametrize(
    "fixture", [f for f in CLASSICAL_FIXTURES if 6 < len(f.load().crossings) <= 10], ids=lambda f: f.name
)
def test_euler_characteristic_on_larger_knots(fixture):
    d = fixture.load()
    chi = homology_euler(khovanov_homology(d))
    assert chi.substitute("q", -(A ** -2)) == LOOP_VALUE * normalized_jones(d).f


def test_mapping_cone_counts(figure_eight):
    for c in figure_eight.classical:
        assert mapping_cone_holds(figure_eight, c)


def test_frobenius_identities():
    checks = check_frobenius()
    assert len(checks) == 8
    assert all(ok for _, ok in checks)


def test_broken_complex_is_detected():
    gens = {i: [Generator((), (), i, 0)] for i in range(3)}
    one = IntMatrix.from_dense([[1]])
    cx = KhovanovComplex(0, 0, gens, {0: one, 1: one, 2: IntMatrix.zeros(0, 1)})
    with pytest.raises(ComplexError):
        check_d_squared(cx)


def test_crossing_cap(figure_eight):
    with pytest.raises(TooManyCrossings):
        build_complex(figure_eight, max_crossings=3)


def test_virtual_diagrams_are_rejected(virtual_trefoil):
    with pytest.raises(NonPlanar):
        khovanov_homology(virtual_trefoil)
    with pytest.raises(NonPlanar):
        chain_ranks_by_tier(virtual_trefoil)
