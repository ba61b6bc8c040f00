import pytest

from services.codec import (
    codec,
    decode_braid,
    decode_gauss,
    decode_pd,
    encode_gauss,
    encode_pd,
    from_braid_word,
    from_json,
    to_json,
)
from services.diagram import is_isomorphic, writhe
from services.errors import BadIndex, DisconnectedDiagram, InconsistentCode, ParseError

TREFOIL_PD = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"


def test_pd_trefoil():
    d = decode_pd(TREFOIL_PD)
    assert len(d.crossings) == 3
    assert d.num_components == 1
    assert writhe(d) == 3


def test_pd_text_is_reproduced():
    assert encode_pd(decode_pd(TREFOIL_PD)) == TREFOIL_PD


def test_pd_pairwise_crossing_strands():
    d = decode_pd("X(1,4,2,3) X(3,6,4,5) X(5,2,6,1)")
    assert len(d.crossings) == 3
    assert d.num_components == 3


def test_pd_loops():
    assert decode_pd("").free_loops == 1
    assert decode_pd("O").free_loops == 1


@pytest.mark.parametrize("text", ["O O", "X(1,2,2,1) X(3,4,4,3)", "X(1,2,2,1) O"])
def test_pd_split_diagrams_are_rejected(text):
    with pytest.raises(DisconnectedDiagram):
        decode_pd(text)


def test_pd_spacing():
    d = decode_pd("  X( 1, 5 ,2,4)X(3,1,4,6) X(5,3,6,2) ")
    assert len(d.crossings) == 3


@pytest.mark.parametrize("text", ["X(1,2,3)", "Y(1,2,3,4)", "X(1,5,2,4) junk"])
def test_pd_parse_errors(text):
    with pytest.raises(ParseError):
        decode_pd(text)


def test_pd_label_used_three_times():
    with pytest.raises(InconsistentCode):
        decode_pd("X(1,1,1,2) X(2,3,3,4)")


def test_gauss_classical_trefoil_needs_no_virtual_crossings():
    d = decode_gauss("O1+U2+O3+U1+O2+U3+")
    assert len(d.classical) == 3
    assert not d.virtual
    assert writhe(d) == 3


def test_gauss_virtual_trefoil_is_planarized():
    d = decode_gauss("O1+O2+U1+U2+")
    assert len(d.classical) == 2
    assert len(d.virtual) >= 1
    abstract = decode_gauss("O1+O2+U1+U2+", planarize_code=False)
    assert not abstract.virtual


def test_gauss_two_components():
    d = decode_gauss("O1+U2+/U1+O2+")
    assert d.num_components == 2


def test_gauss_split_components_are_rejected():
    with pytest.raises(DisconnectedDiagram):
        decode_gauss("O1+U1+/O2-U2-", planarize_code=False)
    with pytest.raises(DisconnectedDiagram):
        decode_gauss("O1+U1+/")


def test_gauss_round_trip_up_to_isomorphism(figure_eight):
    d = figure_eight
    assert is_isomorphic(decode_gauss(encode_gauss(d)), d)


@pytest.mark.parametrize("text", ["O1+U1-", "O1+O1+", "O1+U2+"])
def test_gauss_inconsistent(text):
    with pytest.raises(InconsistentCode):
        decode_gauss(text)


def test_gauss_bad_token():
    with pytest.raises(ParseError):
        decode_gauss("O1*U1*")


def test_braid_closure():
    d = decode_braid("1 −2 1 −2")
    assert len(d.crossings) == 4
    assert d.num_components == 1
    assert writhe(d) == 0


def test_empty_braid_on_one_strand_is_the_unknot():
    d = from_braid_word(1, [])
    assert d.free_loops == 1
    assert not d.crossings


@pytest.mark.parametrize("n, word", [(3, []), (3, [1]), (4, [1, 1, 3])])
def test_split_braid_closures_are_rejected(n, word):
    with pytest.raises(DisconnectedDiagram):
        from_braid_word(n, word)


def test_braid_generator_out_of_range():
    with pytest.raises(BadIndex):
        from_braid_word(2, [2])
    with pytest.raises(BadIndex):
        from_braid_word(2, [0])


def test_braid_parse_error():
    with pytest.raises(ParseError):
        decode_braid("1 x 1")


def test_braids_are_input_only(trefoil):
    with pytest.raises(InconsistentCode):
        codec("encode", "braid", trefoil)


def test_json_round_trip(figure_eight):
    assert from_json(to_json(figure_eight)) == figure_eight
    assert codec("decode", "json", codec("encode", "json", figure_eight)) == figure_eight


def test_bad_json():
    with pytest.raises(ParseError):
        from_json("{not json")
    with pytest.raises(ParseError):
        from_json({"crossings": [{"kind": "classical"}]})


def test_unknown_format():
    with pytest.raises(ParseError):
        codec("decode", "dt", "4 6 2")
