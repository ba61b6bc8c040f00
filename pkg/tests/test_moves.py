import random

import pytest

from services.alexander import alexander_poly
from services.arrow import arrow_polynomial
from services.bracket import bracket_poly, normalized_jones
from services.diagram import is_isomorphic, writhe
from services.errors import PatternNotFound
from services.fixtures import CLASSICAL_FIXTURES, VIRTUAL_FIXTURES
from services.laurent import A
from services.moves import (
    CLASSICAL_MOVES,
    VIRTUAL_MOVES,
    MoveSpec,
    apply_move,
    find_sites,
    random_move_sequence,
)


def _first(d, move):
    sites = find_sites(d, move)
    assert sites, f"no {move} site"
    return apply_move(d, MoveSpec(move, sites[0]))


def test_curl_changes_writhe_by_one(trefoil):
    d = _first(trefoil, "R1+")
    assert len(d.crossings) == 4
    assert abs(writhe(d) - writhe(trefoil)) == 1
    assert normalized_jones(d).f == normalized_jones(trefoil).f


@pytest.mark.parametrize("move", ["R1+", "R1-"])
def test_each_curl_scales_the_bracket_by_minus_a_cubed(trefoil, move):
    start = _first(trefoil, "R1+") if move == "R1-" else trefoil
    sites = find_sites(start, move)
    assert sites
    for site in sites:
        moved = apply_move(start, MoveSpec(move, site))
        shift = writhe(moved) - writhe(start)
        assert abs(shift) == 1
        assert bracket_poly(moved) == bracket_poly(start) * (-(A ** 3)) ** shift


def test_curl_can_be_removed_again(trefoil):
    curled = _first(trefoil, "R1+")
    assert is_isomorphic(_first(curled, "R1-"), trefoil)


def test_no_kinks_in_a_reduced_diagram(trefoil):
    assert find_sites(trefoil, "R1-") == []
    with pytest.raises(PatternNotFound):
        apply_move(trefoil, MoveSpec("R1-"))


def test_second_move_keeps_the_bracket(figure_eight):
    pushed = _first(figure_eight, "R2")
    assert len(pushed.crossings) == 6
    assert bracket_poly(pushed) == bracket_poly(figure_eight)
    assert bracket_poly(_first(pushed, "R2inv")) == bracket_poly(figure_eight)


def test_third_move_keeps_the_bracket(trefoil):
    d = trefoil
    rng = random.Random(3)
    for _ in range(10):
        if find_sites(d, "R3"):
            break
        d = apply_move(d, MoveSpec("R2", rng.choice(find_sites(d, "R2"))))
    moved = _first(d, "R3")
    assert len(moved.crossings) == len(d.crossings)
    assert bracket_poly(moved) == bracket_poly(trefoil)


@pytest.mark.parametrize("move", ["V1", "V2"])
def test_virtual_moves_keep_the_arrow_polynomial(virtual_trefoil, move):
    d = _first(virtual_trefoil, move)
    assert arrow_polynomial(d).normalized == arrow_polynomial(virtual_trefoil).normalized


def test_unknown_move():
    with pytest.raises(PatternNotFound):
        MoveSpec("R4")


def test_sequences_are_reproducible(figure_eight):
    a, moves_a = random_move_sequence(figure_eight, random.Random(11), 20)
    b, moves_b = random_move_sequence(figure_eight, random.Random(11), 20)
    assert moves_a == moves_b
    assert a == b


def test_growth_is_bounded(trefoil):
    d, moves = random_move_sequence(trefoil, random.Random(5), 40, CLASSICAL_MOVES + VIRTUAL_MOVES, max_growth=2)
    assert len(d.crossings) <= len(trefoil.crossings) + 2
    assert all(m.move in CLASSICAL_MOVES + VIRTUAL_MOVES for m in moves)


def test_move_lists():
    assert set(CLASSICAL_MOVES) == {"R1+", "R1-", "R2", "R2inv", "R3"}
    assert "Vmixed" in VIRTUAL_MOVES


@pytest.mark.slow
@pytest.mark.parametrize("seed", [1, 7, 23])
@pytest.mark.parametrize("fixture", CLASSICAL_FIXTURES, ids=lambda f: f.name)
def test_long_classical_sequences_keep_jones_and_alexander(fixture, seed):
    start = fixture.load()
    moved, applied = random_move_sequence(start, random.Random(seed), 25, CLASSICAL_MOVES, max_growth=3)
    assert normalized_jones(moved).jones == normalized_jones(start).jones
    assert alexander_poly(moved) == alexander_poly(start)
    if start.crossings:
        assert applied


@pytest.mark.slow
@pytest.mark.parametrize("seed", [1, 7, 23])
@pytest.mark.parametrize("fixture", VIRTUAL_FIXTURES, ids=lambda f: f.name)
def test_long_virtual_sequences_keep_the_arrow_polynomial(fixture, seed):
    start = fixture.load()
    moved, applied = random_move_sequence(start, random.Random(seed), 25, CLASSICAL_MOVES + VIRTUAL_MOVES, max_growth=3)
    assert arrow_polynomial(moved).normalized == arrow_polynomial(start).normalized
    assert applied
