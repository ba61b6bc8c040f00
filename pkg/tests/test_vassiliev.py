from fractions import Fraction

import pytest

from services.errors import DegreeTooLarge, InconsistentCode, MultiComponent, NonPlanar, TooManyNodes
from services.vassiliev import (
    ChordDiagram,
    NodalDiagram,
    all_chord_diagrams,
    canonical_chord_word,
    check_jacobi,
    chord_from_nodal,
    finite_type_defect,
    four_term_relations,
    jones_vassiliev_coeffs,
    lie_weight,
    relation_value,
    so3_weight_system,
)


def test_canonical_word_ignores_rotation_and_labels():
    assert canonical_chord_word((2, 2, 1, 1)) == (1, 1, 2, 2)
    assert canonical_chord_word("1221") == (1, 1, 2, 2)
    assert canonical_chord_word((5, 7, 5, 7)) == (1, 2, 1, 2)
    assert canonical_chord_word(()) == ()


def test_chord_diagram_text():
    cd = ChordDiagram.parse("1221")
    assert cd.to_text() == "1122"
    assert cd.degree == 2
    assert cd.endpoints(2) == (2, 3)
    with pytest.raises(InconsistentCode):
        ChordDiagram((1, 2, 1))


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5)])
def test_chord_diagram_counts(n, count):
    assert len(all_chord_diagrams(n)) == count


def test_trefoil_chord_word(trefoil):
    nd = NodalDiagram(trefoil, frozenset(trefoil.classical))
    assert chord_from_nodal(nd).to_text() == "123123"
    assert chord_from_nodal(NodalDiagram(trefoil, frozenset())).word == ()


def test_nodal_diagram_rejects_links_and_virtual_nodes(hopf, virtual_trefoil):
    with pytest.raises(MultiComponent):
        chord_from_nodal(NodalDiagram(hopf, frozenset(hopf.classical)))
    with pytest.raises(InconsistentCode):
        NodalDiagram(virtual_trefoil, frozenset(virtual_trefoil.virtual[:1]))


def test_so3_weights():
    ws = so3_weight_system()
    assert lie_weight(ChordDiagram(()), ws) == 3
    assert lie_weight(ChordDiagram((1, 1)), ws) == -6
    assert lie_weight(ChordDiagram((1, 1, 2, 2)), ws) == 12


def test_jacobi_identities():
    assert all(ok for _, ok in check_jacobi(so3_weight_system()))


@pytest.mark.parametrize("n", [2, 3])
def test_four_term_relations_vanish(n):
    ws = so3_weight_system()
    relations = four_term_relations(n)
    if n == 3:
        assert relations
    for rel in relations:
        assert len(rel.terms) == 4
        assert relation_value(rel, ws) == 0


def test_relation_json():
    rel = four_term_relations(3)[0]
    assert [t["sign"] for t in rel.to_json()] == [1, -1, 1, -1]


def test_jones_coefficients(trefoil, figure_eight, unknot_diagram):
    assert jones_vassiliev_coeffs(trefoil, 2) == [1, 0, -3]
    assert jones_vassiliev_coeffs(figure_eight, 2) == [1, 0, 3]
    assert jones_vassiliev_coeffs(unknot_diagram, 3) == [1, 0, 0, 0]


def test_finite_type_defect(trefoil):
    one = NodalDiagram(trefoil, frozenset(trefoil.classical[:1]))
    assert finite_type_defect(one, 2) == Fraction(-3)
    everything = NodalDiagram(trefoil, frozenset(trefoil.classical))
    assert finite_type_defect(everything, 2) == 0


def test_caps(trefoil):
    with pytest.raises(DegreeTooLarge):
        all_chord_diagrams(4, max_degree=3)
    with pytest.raises(TooManyNodes):
        finite_type_defect(NodalDiagram(trefoil, frozenset(trefoil.classical)), 2, max_nodes=2)


def test_virtual_diagrams_are_rejected(virtual_trefoil):
    with pytest.raises(NonPlanar):
        jones_vassiliev_coeffs(virtual_trefoil, 2)
    nd = NodalDiagram(virtual_trefoil, frozenset(virtual_trefoil.classical[:1]))
    with pytest.raises(NonPlanar):
        finite_type_defect(nd, 2)
