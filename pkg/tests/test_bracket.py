from collections import Counter
from itertools import combinations
from math import comb

import pytest

from services.bracket import (
    bracket_poly,
    determinant,
    enumerate_states,
    normalized_jones,
    revolving_door,
    state_histogram,
    to_jones,
)
from services.codec import decode_gauss
from services.diagram import mirror, resolve_state, unknot
from services.errors import NonPlanar, TooManyCrossings
from services.fixtures import load
from services.laurent import LOOP_VALUE, LaurentPoly, parse_poly


def test_unknot_and_unlink():
    assert bracket_poly(unknot()) == 1
    assert bracket_poly(unknot(2)) == LOOP_VALUE


def test_trefoil_golden_values(trefoil, poly):
    value = normalized_jones(trefoil)
    assert value.bracket == poly("-A^5 - A^-3 + A^-7")
    assert value.f == poly("A^-4 + A^-12 - A^-16")
    assert value.jones.to_text() == "-t^4 + t^3 + t"


def test_pd_and_braid_trefoils_agree(trefoil, trefoil_pd):
    assert normalized_jones(trefoil_pd).jones == normalized_jones(trefoil).jones


def test_figure_eight_jones(figure_eight, poly):
    assert normalized_jones(figure_eight).jones == poly("t^-2 - t^-1 + 1 - t + t^2")


def test_mirror_inverts_the_jones_variable(trefoil):
    jones = normalized_jones(trefoil).jones
    mirrored = normalized_jones(mirror(trefoil)).jones
    assert mirrored == jones.substitute("t", LaurentPoly.var("t", -1))


def test_jones_of_the_unknot_is_one(unknot_diagram):
    assert normalized_jones(unknot_diagram).jones == 1


def test_trefoil_state_histogram(trefoil):
    assert state_histogram(trefoil) == Counter({(0, 2): 1, (1, 1): 3, (2, 2): 3, (3, 3): 1})


def test_fast_loop_count_matches_union_find(figure_eight):
    for choice, loops in enumerate_states(figure_eight):
        assert resolve_state(figure_eight, choice).loop_count == loops


@pytest.mark.parametrize("n", range(1, 7))
def test_revolving_door_visits_every_subset_once(n):
    for k in range(n + 1):
        subsets = list(revolving_door(n, k))
        assert len(subsets) == comb(n, k)
        assert set(subsets) == set(combinations(range(n), k))
        for a, b in zip(subsets, subsets[1:]):
            assert len(set(a) ^ set(b)) == 2


@pytest.mark.parametrize("name, det", [("3_1", 3), ("4_1", 5), ("5_1", 5), ("5_2", 7), ("6_1", 9)])
def test_determinants(name, det):
    value = determinant(load(name))
    assert type(value) is int
    assert value == det


def test_determinant_needs_a_classical_diagram(virtual_trefoil):
    with pytest.raises(NonPlanar):
        determinant(virtual_trefoil)


def test_crossing_cap(figure_eight):
    with pytest.raises(TooManyCrossings):
        bracket_poly(figure_eight, max_crossings=3)


def test_virtual_crossings_do_not_change_the_bracket():
    code = "O1+O2+U1+U2+"
    planar = decode_gauss(code)
    abstract = decode_gauss(code, planarize_code=False)
    assert bracket_poly(planar) == bracket_poly(abstract)


def test_to_jones_substitution(poly):
    assert to_jones(poly("A^-4")) == poly("t")
