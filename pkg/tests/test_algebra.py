import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rs_maxwell import algebra
from rs_maxwell.algebra import I4

cplx = st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False)


def test_alpha1_literal():
    expect = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    assert np.array_equal(algebra.alpha(1), expect)


def test_beta1_literal():
    expect = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    assert np.array_equal(algebra.beta(1), expect)


@pytest.mark.parametrize("j", [1, 2, 3])
def test_squares(j):
    assert np.array_equal(algebra.alpha(j) @ algebra.alpha(j), -I4)
    assert np.array_equal(algebra.beta(j) @ algebra.beta(j), -I4)


def test_cyclic_products():
    a = [None] + [algebra.alpha(j) for j in (1, 2, 3)]
    b = [None] + [algebra.beta(j) for j in (1, 2, 3)]
    assert np.array_equal(a[1] @ a[2], a[3])
    assert np.array_equal(a[3] @ a[1], a[2])
    assert np.array_equal(b[1] @ b[2], -b[3])


def test_alpha_commutes_with_beta():
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            assert not np.any(algebra.commutator(algebra.alpha(i), algebra.beta(j)))


def test_dirac_identities():
    g = algebra.dirac_gamma
    assert np.array_equal(1j * g(0) @ g(2), algebra.alpha(1))
    assert np.array_equal(-g(3) @ g(1), algebra.beta(1))
    assert np.array_equal(g(5), np.diag([-1, -1, 1, 1]))
    assert np.array_equal(-1j * g(0) @ g(1) @ g(2) @ g(3), g(5))


def test_generators():
    S1, S2, S3 = (algebra.generator("S", k) for k in (1, 2, 3))
    N1, N2 = (algebra.generator("N", k) for k in (1, 2))
    assert np.array_equal(algebra.generator("N", 3), 1j * S3)
    assert np.array_equal(algebra.commutator(S1, S2), S3)
    assert np.array_equal(algebra.commutator(N1, N2), -S3)


@pytest.mark.parametrize("bad", [0, 4, -1])
def test_index_errors(bad):
    with pytest.raises(ValueError):
        algebra.alpha(bad)
    with pytest.raises(ValueError):
        algebra.beta(bad)


def test_dirac_index_error():
    with pytest.raises(ValueError):
        algebra.dirac_gamma(4)
    with pytest.raises(ValueError):
        algebra.generator("Q", 1)


def test_constants_are_copies():
    a = algebra.alpha(1)
    a[0, 1] = 99
    assert algebra.alpha(1)[0, 1] == 1


def test_product_table_exact():
    rep = algebra.verify_product_table()
    assert len(rep.entries) > 50
    assert rep.max() == 0.0
    assert "beta1 beta2 = -beta3" in rep


def test_corruption_is_named_and_restored():
    with algebra.corrupted("alpha1"):
        bad = algebra.verify_product_table().failures(0.0)
        assert "alpha1^2 = -I" in bad
        assert "alpha1 = i gamma0 gamma2" in bad
        assert not any("beta" in k and "alpha" not in k for k in bad)
    assert algebra.verify_product_table().max() == 0.0


def test_corrupt_unknown():
    with pytest.raises(ValueError):
        with algebra.corrupted("alpha9"):
            pass


@settings(max_examples=50, deadline=None)
@given(arrays(complex, (4, 4), elements=cplx))
def test_adjoint_involution(A):
    assert np.array_equal(algebra.adjoint(algebra.adjoint(A)), A)
    assert not np.any(algebra.commutator(A, A))


def test_levi_civita_sign():
    e = algebra.levi_civita4()
    assert e[0, 1, 2, 3] == 1 and e[1, 0, 2, 3] == -1
    assert algebra.levi_civita3()[0, 1, 2] == 1
