import pytest

from services.alexander import (
    alexander_determinant,
    alexander_poly,
    conway_to_alexander,
    knot_determinant,
    region_matrix,
    trail_state_sum,
)
from services.bracket import determinant
from services.diagram import Diagram, mirror
from services.errors import NonIntegralComposition, NonPlanar, TooManyCrossings, Unoriented
from services.fixtures import CLASSICAL_FIXTURES
from services.skein import conway_poly

SMALL = [f for f in CLASSICAL_FIXTURES if len(f.load().crossings) <= 8]
KNOTS = [f for f in SMALL if f.load().num_components == 1]


@pytest.mark.parametrize(
    "name, text",
    [("unknot", "1"), ("3_1", "t - 1 + t^-1"), ("3_1_pd", "t - 1 + t^-1"), ("4_1", "t - 3 + t^-1"),
     ("5_1", "t^2 - t + 1 - t^-1 + t^-2"), ("5_2", "2*t - 3 + 2*t^-1")],
)
def test_golden_alexander(name, text, poly):
    d = next(f for f in CLASSICAL_FIXTURES if f.name == name).load()
    assert alexander_poly(d) == poly(text)


def test_mirror_has_the_same_alexander_polynomial(trefoil):
    assert alexander_poly(mirror(trefoil)) == alexander_poly(trefoil)


def test_region_matrix_rows_sum_to_zero(trefoil):
    rows = region_matrix(trefoil)
    assert len(rows) == 3
    assert all(len(row) == 5 for row in rows)
    for row in rows:
        total = row[0]
        for entry in row[1:]:
            total = total + entry
        assert total == 0


@pytest.mark.parametrize("fixture", SMALL, ids=lambda f: f.name)
def test_trail_states_sum_to_the_minor(fixture):
    d = fixture.load()
    total, states = trail_state_sum(d)
    assert total == alexander_determinant(d)
    assert states


def test_trefoil_trails(trefoil):
    total, states = trail_state_sum(trefoil)
    assert len(states) == 3
    assert all(s.loops == 1 for s in states)
    assert {s.sign for s in states} <= {1, -1}
    assert all(len(s.markers) == 3 for s in states)
    assert states[0].to_json()["markers"][0].keys() == {"region", "crossing", "corner"}


@pytest.mark.parametrize("fixture", KNOTS, ids=lambda f: f.name)
def test_knot_determinant_matches_the_bracket(fixture):
    d = fixture.load()
    value = knot_determinant(d)
    assert type(value) is int
    assert value == determinant(d)


@pytest.mark.parametrize("fixture", SMALL, ids=lambda f: f.name)
def test_conway_substitution_gives_alexander(fixture):
    d = fixture.load()
    assert conway_to_alexander(conway_poly(d)) == alexander_poly(d)


def test_links_have_no_integral_determinant(hopf):
    with pytest.raises(NonIntegralComposition):
        knot_determinant(hopf)


def test_virtual_input_is_rejected(virtual_trefoil):
    with pytest.raises(NonPlanar):
        alexander_poly(virtual_trefoil)


def test_unoriented_input_is_rejected(trefoil):
    with pytest.raises(Unoriented):
        alexander_poly(Diagram(trefoil.crossings, 0, None))


def test_crossing_cap(figure_eight):
    with pytest.raises(TooManyCrossings):
        alexander_poly(figure_eight, max_crossings=2)
