import pytest

from ghostclass.affine import AffineForm
from ghostclass.errors import DomainError
from ghostclass.hodge import boundary_face_weight, levi_weight_bound, middle_weight
from ghostclass.kostant import dot_action, element_by_label, kostant_representatives
from ghostclass.rootsys import SymbolicWeight, build_root_system

P = AffineForm.parse


def test_levi_bounds():
    zero = SymbolicWeight.from_values((0, 0, 0), 0)
    assert levi_weight_bound(1, 0, zero) == AffineForm.constant(0)
    lam = SymbolicWeight.symbolic(3)
    assert levi_weight_bound(2, 1, lam) == P("1-2c-a1-a2")
    row2 = SymbolicWeight((P("a2-1"), P("a1+1"), P("a3")), P("c"))
    assert levi_weight_bound(1, 3, row2) == P("5-2c-2a2")
    with pytest.raises(DomainError):
        levi_weight_bound(0, 1, lam)


def test_middle_weight():
    lam = SymbolicWeight.symbolic(3)
    assert middle_weight(7, lam) == P("7-2c")
    with pytest.raises(DomainError):
        middle_weight(-1, lam)


def test_w24_weight(rs5):
    lam = SymbolicWeight.symbolic(3)
    assert boundary_face_weight(element_by_label(rs5, "w24"), lam, rs5) == P("8+2a2-2c")


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_offset_identity_and_c_coefficient(n):
    rs = build_root_system(n)
    lam = SymbolicWeight.symbolic(rs.l)
    p0 = kostant_representatives(rs, 0)
    for w, ell in zip(p0.elements, p0.lengths):
        wt = boundary_face_weight(w, lam, rs)
        n1 = dot_action(w, lam, rs).eps[0]
        assert wt - middle_weight(ell + 1, lam) == -2 * n1 - ell - 1
        assert wt.coeff("c") == -2
        assert middle_weight(ell + 1, lam).coeff("c") == -2
