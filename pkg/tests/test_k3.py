import pytest

from seccalc.k3 import (
    C1, C2, CASE_III_B_CURVES, case_iii_a, check_dvl_families, k3_class, special_family, vdim_k3,
)
from seccalc.lattice import arithmetic_genus, self_intersection, subtract, virtual_dimension


def test_vdim_examples():
    for d in range(0, 8):
        assert vdim_k3(2, d, [d, d]) == 1 - d
        assert vdim_k3(4, d, [2 * d]) == 1 - d
    assert vdim_k3(2, 0, []) == 1
    with pytest.raises(ValueError):
        vdim_k3(3, 1, [])
    with pytest.raises(ValueError):
        vdim_k3(2, 1, [-1])


def test_vdim_matches_lattice():
    for n in (2, 4, 6):
        for d in range(5):
            for ms in ((d, d), (2 * d,), (1, 2, 3)):
                assert vdim_k3(n, d, ms) == virtual_dimension(k3_class(n, d, *ms))


def test_genus_two_curves():
    for C in (C1, C2):
        assert (self_intersection(C), arithmetic_genus(C)) == (0, 2)
    # genus-3 curves through the blown-up points, of square 1
    for C in CASE_III_B_CURVES:
        assert (self_intersection(C), arithmetic_genus(C)) == (1, 3)


def test_fixed_component_identities():
    for m in range(1, 6):
        L, C = case_iii_a(m)
        assert virtual_dimension(L - C) == virtual_dimension(L)
    for C in CASE_III_B_CURVES:
        assert virtual_dimension(C) == virtual_dimension(2 * C)


def test_dvl_report():
    report = check_dvl_families(d_max=5, m_max=3)
    assert report.ok, report.failures
    assert {f["restricted"] for f in report.families} == {(0, 1)}
    assert all(f["accepted_alphas"] == [f["system"].degree] for f in report.families)
    assert any(c["case"] == "iii-c" and c["refused"] for c in report.fixed_component_cases)
    assert report.discrepancies


def test_zero_class_value():
    # after removing d copies of C the class is zero, where the formula gives 1
    for which in (1, 2):
        for d in range(2, 5):
            L = special_family(which, d)
            C = C1 if which == 1 else C2
            assert virtual_dimension(subtract(L, d, C)) == 1


def test_dvl_bound_checked():
    with pytest.raises(ValueError):
        check_dvl_families(d_max=1)
