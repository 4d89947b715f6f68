import numpy as np
import pytest

from ghostclass import _kernels
from ghostclass.rootsys import build_root_system
from ghostclass.weyl import enumerate_weyl, group_inversions, inversion_set


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_kernel_matches_elementwise(n):
    rs = build_root_system(n)
    inv = group_inversions(rs, backend="numpy")
    for k, w in enumerate(enumerate_weyl(rs)[:300]):
        want = set(inversion_set(w, rs))
        got = {r for r, flag in zip(rs.positive_roots, inv[k]) if flag}
        assert got == want


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not available")
@pytest.mark.parametrize("n", [3, 4, 5, 8, 10])
def test_backends_agree(n):
    rs = build_root_system(n)
    a = group_inversions(rs, backend="numba")
    b = group_inversions(rs, backend="numpy")
    assert a.dtype == b.dtype and np.array_equal(a, b)


def test_unknown_backend():
    rs = build_root_system(5)
    with pytest.raises(ValueError):
        _kernels.inversion_matrix(np.zeros((1, 3), np.int8), np.ones((1, 3), np.int8),
                                  _kernels.encode_roots(rs.positive_roots), "fortran")
