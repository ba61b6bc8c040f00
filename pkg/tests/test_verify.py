from services.fixtures import fixtures_by_name
from services.tensor_net import RMatrixSet, default_rmatrix, scaled
from services.verify import (
    all_passed,
    axiom_checks,
    complex_checks,
    fourterm_checks,
    fuzz_checks,
    nested_caps,
    tensor_checks,
    tl_checks,
)


def test_nested_caps():
    m = nested_caps(2)
    assert m.top == 4 and m.bottom == 0


def test_tl_suite():
    checks = tl_checks(4)
    assert checks
    assert all_passed(checks), [c for c in checks if not c.passed]


def test_tensor_suite():
    assert all_passed(tensor_checks())


def test_broken_rmatrix_is_reported():
    rm = default_rmatrix()
    broken = RMatrixSet(scaled(rm.M, 2), rm.R_plus, rm.R_minus)
    checks = tensor_checks(broken)
    assert not all_passed(checks)
    assert any(c.detail and c.detail.startswith("residual") for c in checks if not c.passed)


def test_complex_suite():
    checks = complex_checks(fixtures_by_name(["3_1", "hopf", "4_1"]))
    assert len(checks) == 3
    assert all_passed(checks)


def test_selected_axioms():
    checks = axiom_checks(["frobenius", "lie"])
    assert {c.suite for c in checks} == {"frobenius", "lie"}
    assert all_passed(checks)


def test_fourterm():
    checks = fourterm_checks(3)
    assert [c.suite for c in checks[-3:]] == ["fourterm"] * 3
    assert all_passed(checks)


def test_fuzz_suite():
    checks = fuzz_checks(fixtures_by_name(["hopf"]), sequences=2, length=5, seed=4)
    assert len(checks) == 1
    assert all_passed(checks)
