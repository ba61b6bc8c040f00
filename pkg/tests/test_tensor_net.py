import pytest

from services.bracket import bracket_poly
from services.errors import BadIndex, NonIntegralComposition
from services.fixtures import braid_corpus
from services.laurent import A, LOOP_VALUE
from services.tensor_net import (
    I_UNIT,
    GaussianLaurent,
    MorseWord,
    RMatrixSet,
    compile_morse,
    contract,
    default_rmatrix,
    eye,
    scaled,
    verify_tensor_axioms,
)


def _failed(checks):
    return {c.group for c in checks if not c.passed}


def test_default_rmatrix_satisfies_every_axiom():
    checks = verify_tensor_axioms(default_rmatrix())
    assert {c.group for c in checks} == {"min_max", "loop", "vertical_r2", "slide", "twist", "ybe"}
    assert _failed(checks) == set()
    assert all(c.residual == [] for c in checks)


def test_identity_rmatrix_is_caught():
    rm = default_rmatrix()
    fault = RMatrixSet(M=rm.M, R_plus=eye(4), R_minus=eye(4))
    failed = _failed(verify_tensor_axioms(fault))
    assert "twist" in failed
    assert "slide" in failed
    assert "ybe" not in failed
    assert "vertical_r2" not in failed


def test_rescaled_cup_is_caught():
    rm = default_rmatrix()
    fault = RMatrixSet(M=scaled(rm.M, 2), R_plus=rm.R_plus, R_minus=rm.R_minus)
    checks = verify_tensor_axioms(fault)
    failed = _failed(checks)
    assert {"min_max", "loop"} <= failed
    loop = next(c for c in checks if c.group == "loop")
    assert loop.residual


def test_unknot_contracts_to_the_loop_value():
    assert contract(compile_morse(1, []), default_rmatrix()) == LOOP_VALUE


def test_trefoil_contraction(poly):
    value = contract(compile_morse(2, [1, 1, 1]), default_rmatrix())
    assert value == LOOP_VALUE * poly("-A^5 - A^-3 + A^-7")


@pytest.mark.slow
@pytest.mark.parametrize("fixture", braid_corpus(size=12, max_crossings=8), ids=lambda f: f.name)
def test_contraction_is_d_times_the_bracket(fixture):
    value = contract(compile_morse(fixture.n_strands, fixture.word), default_rmatrix())
    assert value == LOOP_VALUE * bracket_poly(fixture.load())


def test_morse_profile():
    mw = compile_morse(2, [1, -1])
    assert mw.profile == (0, 2, 4, 4, 4, 2, 0)
    assert mw.to_json()[0] == ["cup", 0]


def test_bad_morse_words():
    with pytest.raises(BadIndex):
        compile_morse(2, [2])
    with pytest.raises(BadIndex):
        MorseWord((("cap", 0),), 1)
    with pytest.raises(BadIndex):
        MorseWord((("swirl", 0),), 2)
    with pytest.raises(BadIndex):
        contract(MorseWord((("cup", 0),)), default_rmatrix())
    with pytest.raises(BadIndex):
        compile_morse(2, [1], closure="plat")


def test_complex_valued_contraction_is_rejected():
    rm = default_rmatrix()
    rotated = RMatrixSet(M=rm.M, R_plus=scaled(rm.R_plus, I_UNIT), R_minus=rm.R_minus)
    with pytest.raises(NonIntegralComposition):
        contract(compile_morse(2, [1, 1, 1]), rotated)


def test_gaussian_arithmetic():
    i = GaussianLaurent(0, 1)
    assert i * i == -1
    assert (GaussianLaurent(A, 1) - GaussianLaurent(A, 1)).is_zero()
