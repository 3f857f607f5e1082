import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphc.gf import DEFAULT_POLYNOMIALS, FieldError, GF, field, field_for_q, is_irreducible


@pytest.mark.parametrize("k", range(1, 9))
def test_field_axioms(k):
    F = field(k)
    q = F.q
    a = np.arange(q)
    M = F.MUL[:q, :q]
    assert (M == M.T).all()
    assert (M[1] == a).all() and (M[0] == 0).all()
    for x in range(1, q):
        assert F.mul(x, F.inv(x)) == 1
    # distributivity on a sample
    for x in range(0, q, max(1, q // 8)):
        for y in range(0, q, max(1, q // 8)):
            for z in range(0, q, max(1, q // 8)):
                assert F.mul(x, y ^ z) == F.mul(x, y) ^ F.mul(x, z)


def test_generator_is_primitive():
    for k in range(1, 9):
        F = field(k)
        seen = {F.pow(F.generator, e) for e in range(F.q - 1)}
        assert len(seen) == F.q - 1


def test_default_polynomials_irreducible():
    for k, p in DEFAULT_POLYNOMIALS.items():
        assert p.bit_length() - 1 == k and is_irreducible(p)
    assert not is_irreducible(0b101)  # x^2 + 1 = (x + 1)^2


def test_reducible_polynomial_rejected():
    with pytest.raises(FieldError):
        GF(2, 0b101)


def test_field_for_q():
    assert field_for_q(4).q == 4
    with pytest.raises(FieldError):
        field_for_q(6)


def test_sqrt_is_frobenius_inverse():
    F = field(3)
    for x in range(F.q):
        r = F.sqrt(x)
        assert F.mul(r, r) == x


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(1, 6), st.data())
def test_inverse_and_rank(k, m, data):
    F = field(k)
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    A = rng.integers(0, F.q, size=(m, m), dtype=np.uint8)
    r = F.rank(A)
    K = F.kernel(A)
    assert len(K) == m - r
    if len(K):
        assert not F.matmul(A, K.T).any()
    if r == m:
        Ai = F.inverse(A)
        assert (F.matmul(A, Ai) == np.eye(m, dtype=np.uint8)).all()
        assert F.det(A) != 0
    else:
        assert F.det(A) == 0


def test_batched_matmul_matches_loop(rng):
    F = field(2)
    A = rng.integers(0, 4, size=(5, 3, 3), dtype=np.uint8)
    B = rng.integers(0, 4, size=(5, 3, 3), dtype=np.uint8)
    C = F.matmul(A, B)
    for i in range(5):
        for r in range(3):
            for c in range(3):
                acc = 0
                for t in range(3):
                    acc ^= F.mul(int(A[i, r, t]), int(B[i, t, c]))
                assert C[i, r, c] == acc
